import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qplex.geometry import (
    PointSet,
    check_pair,
    envelope_membership,
    find_mmd_sets,
    is_germ,
    make_geometry,
    polar_hyperplane_gap,
    polar_membership,
    polar_point,
    project_to_simplex,
    stem_membership,
    vector_bounds,
)
from qplex.linalg import haar_unitary, projector, random_density, random_kets
from qplex.rep import DimensionParams, state_to_prob

seeds = st.integers(0, 2**32 - 1)


def basis_reps(d, seed, sic):
    u = haar_unitary(d, seed)
    return np.array([state_to_prob(projector(u[:, k]), sic) for k in range(d)])


def test_radii_examples():
    g2 = make_geometry(DimensionParams(2))
    assert (g2.r_o2, g2.r_i2, g2.r_m2) == pytest.approx((1 / 12,) * 3, abs=1e-16)
    g3 = make_geometry(DimensionParams(3))
    assert (g3.r_o2, g3.r_i2, g3.r_m2) == pytest.approx((1 / 18, 1 / 72, 1 / 36), abs=1e-16)
    np.testing.assert_allclose(g2.basis[0], [1 / 2, 1 / 6, 1 / 6, 1 / 6], atol=1e-16)


@pytest.mark.parametrize("d", range(2, 17))
def test_geometry_invariants(d):
    g = make_geometry(DimensionParams(d))
    assert abs(g.r_i * g.r_o - g.r_m2) < 1e-15
    np.testing.assert_allclose(g.dist2(g.basis), g.r_o2, atol=1e-14)
    np.testing.assert_allclose(g.basis.sum(axis=1), 1, atol=1e-14)
    assert g.on_out_sphere(g.basis).all()


def test_check_pair_examples():
    prm = DimensionParams(2)
    g = make_geometry(prm)
    v = check_pair(g.c, g.c, prm)
    assert v.inner == pytest.approx(1 / 4) and v.consistent
    e1, e2 = g.basis[:2]
    oracle = sum(a * b for a, b in zip(e1.tolist(), e2.tolist()))
    v = check_pair(e1, e2, prm)
    assert v.inner == pytest.approx(oracle, abs=1e-16) == pytest.approx(2 / 9)
    vert = np.eye(4)[0]
    assert not check_pair(vert, vert, prm).consistent
    with pytest.raises(ValueError, match="expected 4"):
        check_pair(np.ones(3) / 3, g.c, prm)


def test_is_germ_examples(sics):
    prm = DimensionParams(3)
    g = make_geometry(prm)
    assert is_germ(PointSet(g.basis), prm).passed
    reps = np.array([state_to_prob(r, sics[3]) for r in (random_density(3, 1 + k % 3, k) for k in range(100))])
    rep = is_germ(reps, prm)
    assert rep.passed and rep.n_points == 100
    bad = np.vstack([g.basis, np.eye(9)[0]])
    rep = is_germ(bad, prm)
    assert not rep.passed
    assert (9, 9, 1.0) in rep.violations


def test_is_germ_blocks_agree_with_dense(rng, monkeypatch):
    import qplex.geometry as geo

    prm = DimensionParams(2)
    pts = rng.dirichlet(np.ones(4) * 30, size=300)
    dense = is_germ(pts, prm, max_violations=10**6)
    monkeypatch.setattr(geo, "BLOCK", 7)
    blocked = is_germ(pts, prm, max_violations=10**6)
    assert sorted(dense.violations) == sorted(blocked.violations)
    assert (dense.min_inner, dense.max_inner) == (blocked.min_inner, blocked.max_inner)
    g = pts @ pts.T
    iu = np.triu_indices(300)
    assert dense.min_inner == g[iu].min()


def test_is_germ_truncates():
    prm = DimensionParams(2)
    rep = is_germ(np.eye(4), prm, max_violations=2)
    assert rep.truncated and len(rep.violations) == 2


def test_polar_membership_examples(sics):
    prm = DimensionParams(2)
    g = make_geometry(prm)
    germ = np.array([state_to_prob(random_density(2, 1, k), sics[2]) for k in range(10)])
    assert polar_membership(g.c, germ, prm).member
    for k in range(4):
        assert polar_membership(g.basis[k], np.eye(4), prm).member
    # antipode of a pure state through c is the orthogonal pure state at d = 2
    s = germ[0]
    u = 2 * g.c - s
    v = polar_membership(u, germ, prm)
    assert v.member and abs(v.min_gap) < 1e-12 and v.worst_index == 0
    with pytest.raises(ValueError, match="hyperplane"):
        polar_membership(np.full(4, 0.3), germ, prm)


@pytest.mark.parametrize("d", range(2, 9))
def test_polar_point_maps_spheres(d):
    prm = DimensionParams(d)
    g = make_geometry(prm)
    for e in g.basis[:3]:
        q = polar_point(e, prm)
        assert g.dist2(q) == pytest.approx(g.r_i2, abs=1e-14)
        np.testing.assert_allclose(polar_point(q, prm), e, atol=1e-12)
        assert polar_hyperplane_gap(q, e, prm) == pytest.approx(0, abs=1e-15)
    inner = g.in_sphere_point(g.basis[1])
    assert g.dist2(polar_point(inner, prm)) == pytest.approx(g.r_o2, abs=1e-13)


def test_polar_point_of_center():
    prm = DimensionParams(2)
    with pytest.raises(ValueError, match="barycenter"):
        polar_point(make_geometry(prm).c, prm)


def test_polar_hyperplane_gap_examples():
    d = 3
    prm = DimensionParams(d)
    g = make_geometry(prm)
    e = g.basis[2]
    assert polar_hyperplane_gap(e, e, prm) == pytest.approx(1 / (d * (d + 1)), abs=1e-15)
    assert polar_hyperplane_gap(g.c, e, prm) == pytest.approx(1 / d**2 - 1 / (d * (d + 1)), abs=1e-15)


@given(st.integers(2, 6), seeds)
def test_polar_involution(d, seed):
    prm = DimensionParams(d)
    g = make_geometry(prm)
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(prm.N)
    v -= v.mean()
    s = g.c + rng.uniform(0.1, 2) * g.r_o * v / np.linalg.norm(v)
    np.testing.assert_allclose(polar_point(polar_point(s, prm), prm), s, atol=1e-12)
    # |s - c| |s* - c| = r_o r_i
    prod = np.sqrt(g.dist2(s) * g.dist2(polar_point(s, prm)))
    assert prod == pytest.approx(g.r_o * g.r_i, rel=1e-12)


def test_vector_bounds_examples(sics):
    prm = DimensionParams(3)
    g = make_geometry(prm)
    rep = vector_bounds(g.basis[4], prm)
    assert rep.passed and rep.saturated and rep.saturation_dev < 1e-15
    rep = vector_bounds(g.c, prm)
    assert rep.max_entry == pytest.approx(1 / 9) and rep.zero_count == 0 and not rep.saturated
    p2 = DimensionParams(2)
    for k in range(10):
        rep = vector_bounds(state_to_prob(random_density(2, 1, k), sics[2]), p2)
        assert rep.passed and rep.zero_count <= 1


def test_vector_bounds_flags_violations():
    prm = DimensionParams(2)
    rep = vector_bounds([0.7, 0.3, 0, 0], prm)
    assert not rep.passed and rep.zero_count == 2 and rep.max_entry == 0.7


def test_envelope_examples(sics):
    g = make_geometry(DimensionParams(3))
    assert envelope_membership(g.c, g)
    assert not envelope_membership(np.eye(9)[0], g)
    for k in range(20):
        assert envelope_membership(state_to_prob(random_density(3, 1, k), sics[3]), g)


def test_project_to_simplex(rng):
    for _ in range(50):
        z = rng.standard_normal(6)
        x = project_to_simplex(z)
        assert x.min() >= 0 and x.sum() == pytest.approx(1)
        # optimality: z - x is constant on the support and smaller off it
        r = z - x
        sup = x > 1e-12
        assert np.ptp(r[sup]) < 1e-12
        assert np.all(r[~sup] <= r[sup][0] + 1e-12)


def test_stem_examples():
    g = make_geometry(DimensionParams(3))
    v = stem_membership(g.c, g)
    assert v.member
    v = stem_membership(g.basis[3], g)
    assert v.member and v.lam == pytest.approx(1) and np.argmax(v.weights) == 3
    y = g.c + g.r_i * (g.basis[1] - g.c) / np.linalg.norm(g.basis[1] - g.c)
    v = stem_membership(0.5 * g.basis[0] + 0.5 * y, g)
    assert v.member and v.residual < 1e-8
    np.testing.assert_allclose(v.reconstruct(g), 0.5 * g.basis[0] + 0.5 * y, atol=1e-7)


def test_stem_rejects_outside_points():
    g = make_geometry(DimensionParams(2))
    v = stem_membership(np.eye(4)[0], g)
    assert v.status == "non-member" and v.residual > 0.1
    with pytest.raises(ValueError, match="one vector"):
        stem_membership(np.eye(4), g)


@given(st.integers(2, 4), seeds)
def test_stem_accepts_convex_combinations(d, seed):
    g = make_geometry(DimensionParams(d))
    rng = np.random.default_rng(seed)
    w = rng.dirichlet(np.ones(g.N))
    dirn = rng.standard_normal(g.N)
    dirn -= dirn.mean()
    y = g.c + rng.random() * g.r_i * dirn / np.linalg.norm(dirn)
    lam = rng.random()
    p = lam * (w @ g.basis) + (1 - lam) * y
    v = stem_membership(p, g)
    assert v.member, v.residual
    np.testing.assert_allclose(v.reconstruct(g), p, atol=1e-7)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_mmd_of_orthonormal_basis(d, sics):
    reps = basis_reps(d, 10 + d, sics[d])
    sets = find_mmd_sets(reps, DimensionParams(d))
    assert sets == [list(range(d))]


def test_mmd_of_basis_distributions_are_singletons():
    prm = DimensionParams(3)
    sets = find_mmd_sets(make_geometry(prm).basis, prm)
    assert sets == [[k] for k in range(9)]


def test_mmd_single_and_off_sphere(sics):
    prm = DimensionParams(2)
    p = state_to_prob(random_density(2, 1, 1), sics[2])
    assert find_mmd_sets(p[None], prm) == [[0]]
    assert find_mmd_sets(np.full((1, 4), 0.25), prm) == []


def test_mmd_two_bases(sics):
    prm = DimensionParams(3)
    reps = np.vstack([basis_reps(3, 1, sics[3]), basis_reps(3, 2, sics[3])])
    sets = find_mmd_sets(reps, prm)
    assert [0, 1, 2] in sets and [3, 4, 5] in sets
    assert max(map(len, sets)) == 3


def test_mmd_greedy_path(sics):
    prm = DimensionParams(2)
    reps = np.vstack([basis_reps(2, k, sics[2]) for k in range(40)])
    sets = find_mmd_sets(reps, prm, exhaustive_limit=10)
    assert all(len(s) <= 2 for s in sets)
    assert [0, 1] in sets


@pytest.mark.parametrize("d", [2, 3])
def test_saturation_iff_orthogonal(d, sics):
    prm = DimensionParams(d)
    kets = random_kets(d, 40, d)
    u = haar_unitary(d, 99)
    kets = np.vstack([kets, u.T])
    reps = np.array([state_to_prob(projector(k), sics[d]) for k in kets])
    g = reps @ reps.T
    ov = np.abs(kets.conj() @ kets.T) ** 2
    assert np.all(g >= prm.L - 1e-12) and np.all(g <= prm.U + 1e-12)
    np.testing.assert_array_equal(ov < 1e-10, np.abs(g - prm.L) < 1e-10)
