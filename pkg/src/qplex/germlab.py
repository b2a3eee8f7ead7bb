"""Constructions and experiments: the parameter family, a one-parameter
family of germs, germ growth by sorted regions, the eigenvalue lemma and
effective population size."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from itertools import permutations

import numpy as np
from scipy.linalg import helmert

from .geometry import PointSet, QplexGeometry
from .linalg import as_rng
from .rep import DimensionParams, GeneralParams

log = logging.getLogger(__name__)


def generalized_params(N: int, alpha: float) -> GeneralParams:
    """Constants of the generalized urgleichung; see the flags on the result."""
    return GeneralParams(int(N), float(alpha))


def theta_family(geom: QplexGeometry, theta: float) -> np.ndarray:
    """Point on the out-sphere in the plane of c, e_1, e_2 at angle ``theta``.

    The directions e_1 - c and e_2 - c are not orthogonal, so the raw
    combination ``c + cos(theta)(e_1 - c) + sin(theta)(e_2 - c)`` leaves the
    sphere in between; it is pushed back radially.  The endpoints are exactly
    e_1 (theta = 0) and e_2 (theta = pi/2).
    """
    e = geom.basis
    c = geom.c
    v = math.cos(theta) * (e[0] - c) + math.sin(theta) * (e[1] - c)
    return c + geom.r_o * v / np.linalg.norm(v)


def theta_germ(geom: QplexGeometry, theta: float) -> PointSet:
    """{p_theta} together with all basis distributions."""
    e = geom.basis
    pts = np.vstack([theta_family(geom, theta), e])
    labels = [f"p_theta({theta:g})"] + [f"e_{k + 1}" for k in range(len(e))]
    return PointSet(pts, labels)


def lehmer_rank(perm) -> int:
    """Position of ``perm`` in the lexicographic enumeration (0 = identity)."""
    perm = list(perm)
    n = len(perm)
    rank = 0
    for i in range(n):
        smaller = sum(1 for x in perm[i + 1:] if x < perm[i])
        rank += smaller * math.factorial(n - 1 - i)
    return rank


def sorting_ranks(points: np.ndarray) -> np.ndarray:
    """Region index of each point: the rank of the permutation listing its
    entries in decreasing order (stable on ties)."""
    order = np.argsort(-points, axis=1, kind="stable")
    n = points.shape[1]
    if n <= 8:
        # small N: look the rank up instead of recomputing it per point
        table = {p: k for k, p in enumerate(permutations(range(n)))}
        return np.array([table[tuple(o)] for o in order.tolist()])
    return np.array([lehmer_rank(o) for o in order])


@dataclass
class GrowthState:
    accepted: PointSet
    rejected: int
    region_order: list[int]
    seed: int
    n_candidates: int = 0
    n_regions_total: int = 0
    region_counts: dict[int, tuple[int, int]] = field(default_factory=dict)

    @property
    def acceptance_rate(self) -> float:
        return len(self.accepted) / self.n_candidates if self.n_candidates else 0.0


def sample_out_ball(geom: QplexGeometry, n: int, seed=None, concentration: float = 1.0,
                    batch: int = 4096) -> np.ndarray:
    """``n`` symmetric-Dirichlet draws from the simplex that land in the out-ball."""
    rng = as_rng(seed)
    out = []
    have = 0
    while have < n:
        x = rng.dirichlet(np.full(geom.N, concentration), size=batch)
        x = x[geom.dist2(x) <= geom.r_o2]
        out.append(x)
        have += len(x)
    return np.vstack(out)[:n]


def grow_sorted_qplex(
    d: int,
    n_candidates: int,
    seed: int = 0,
    tol: float = 0.0,
    extra_candidates=None,
    concentration: float = 1.0,
) -> GrowthState:
    """Grow a germ region by region through the sorted-entry chambers.

    Candidates in the simplex cut by the out-ball are grouped by the
    permutation that sorts their entries into decreasing order and the groups
    are visited in lexicographic order of that permutation, so the region
    with ``p(1) >= p(2) >= ...`` comes first.  Only occupied regions are
    visited.  Within a region candidates keep their sampling order.  A
    candidate is kept when its inner products with itself and with every
    point kept so far lie in ``[L - tol, U + tol]``.

    ``extra_candidates`` (e.g. the barycenter) are sorted in with the rest.
    """
    params = DimensionParams(d)
    geom = QplexGeometry(params)
    cands = sample_out_ball(geom, n_candidates, seed, concentration)
    if extra_candidates is not None:
        cands = np.vstack([np.atleast_2d(np.asarray(extra_candidates, float)), cands])
    ranks = sorting_ranks(cands)
    order = np.lexsort((np.arange(len(cands)), ranks))

    lo, hi = params.L - tol, params.U + tol
    acc = np.empty_like(cands)
    m = 0
    rejected = 0
    counts: dict[int, list[int]] = {}
    for k in order:
        p = cands[k]
        ok = lo <= p @ p <= hi
        if ok and m:
            g = acc[:m] @ p
            ok = g.min() >= lo and g.max() <= hi
        tally = counts.setdefault(int(ranks[k]), [0, 0])
        if ok:
            acc[m] = p
            m += 1
            tally[0] += 1
        else:
            rejected += 1
            tally[1] += 1
    region_order = sorted(counts)
    log.info("grew %d points from %d candidates over %d regions", m, len(cands), len(region_order))
    return GrowthState(
        accepted=PointSet(acc[:m].copy()),
        rejected=rejected,
        region_order=region_order,
        seed=seed,
        n_candidates=len(cands),
        n_regions_total=math.factorial(params.N),
        region_counts={r: (a, b) for r, (a, b) in counts.items()},
    )


@dataclass(frozen=True)
class EigProfile:
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float).ravel()
        if not np.all(np.isfinite(v)):
            raise ValueError("eigenvalues must be finite")
        object.__setattr__(self, "values", v)

    @property
    def total(self) -> float:
        return float(self.values.sum())

    @property
    def sum_squares(self) -> float:
        return float(self.values @ self.values)


@dataclass
class LemmaVerdict:
    product: float
    holds: bool
    equality: bool
    family: str | None  # "pure", "reflected" or None


def spectra_lemma_check(profile: EigProfile, tol: float = 1e-12) -> LemmaVerdict:
    """Check sum_i lam_up(i) lam_down(i) <= 0 for sum(lam) = sum(lam^2) = 1.

    Equality holds exactly on two families: (1, 0, ..., 0), reported as
    ``"pure"``, and (2/d, ..., 2/d, 2/d - 1), reported as ``"reflected"``.
    At d = 2 the two coincide and ``"pure"`` is reported.
    """
    lam = profile.values
    d = len(lam)
    if abs(profile.total - 1) > tol or abs(profile.sum_squares - 1) > tol:
        raise ValueError(
            f"not on the constraint variety: sum = {profile.total!r}, sum of squares = {profile.sum_squares!r}"
        )
    up = np.sort(lam)
    prod = float(up @ up[::-1])
    equality = abs(prod) <= tol
    family = None
    if equality:
        down = up[::-1]
        pure = np.zeros(d)
        pure[0] = 1.0
        refl = np.full(d, 2.0 / d)
        refl[-1] -= 1.0
        scale = math.sqrt(tol)
        if np.abs(down - pure).max() <= scale:
            family = "pure"
        elif np.abs(down - refl).max() <= scale:
            family = "reflected"
    return LemmaVerdict(prod, prod <= tol, equality, family)


def sample_constraint_variety(d: int, n: int, seed=None) -> np.ndarray:
    """Points with sum 1 and sum of squares 1, shape ``(n, d)``.

    Such a point is 1/d plus a vector orthogonal to the all-ones vector with
    squared length 1 - 1/d; Gaussian directions in an orthonormal basis of
    that complement make the sample uniform on the (d-2)-sphere.
    """
    if d < 2:
        raise ValueError("need d >= 2")
    rng = as_rng(seed)
    z = rng.standard_normal((n, d - 1))
    norms = np.linalg.norm(z, axis=1, keepdims=True)
    # a zero direction has probability zero; redraw it all the same
    while np.any(norms < 1e-12):
        bad = norms[:, 0] < 1e-12
        z[bad] = rng.standard_normal((int(bad.sum()), d - 1))
        norms = np.linalg.norm(z, axis=1, keepdims=True)
    # rows of the Helmert matrix span the complement of the ones vector
    h = helmert(d)
    return 1.0 / d + math.sqrt(1 - 1.0 / d) * (z / norms) @ h


def n_eff(p) -> float | np.ndarray:
    """Effective population size 1 / <p, p>."""
    p = np.asarray(p, dtype=float)
    pp = np.sum(p * p, axis=-1)
    if np.any(pp == 0):
        raise ValueError("zero vector has no effective size")
    return 1.0 / pp


def n_eff_pair(p, s) -> float | np.ndarray:
    """<p, s> / (<p, p> <s, s>)."""
    p = np.asarray(p, dtype=float)
    s = np.asarray(s, dtype=float)
    pp = np.sum(p * p, axis=-1)
    ss = np.sum(s * s, axis=-1)
    if np.any(pp == 0) or np.any(ss == 0):
        raise ValueError("zero vector has no effective size")
    return np.sum(p * s, axis=-1) / (pp * ss)
