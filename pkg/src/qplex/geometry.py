"""Convex geometry of germs and qplexes in the N = d**2 outcome simplex.

Vectors live in R^N; the affine hyperplane ``H`` is ``sum(u) = 1``.  The
barycenter ``c`` is flat, the basis distributions ``e_k`` are the rows of
``QplexGeometry.basis`` and three spheres about ``c`` (out, mid, in) carry
the constants of the consistency bounds.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import networkx as nx
import numpy as np
from scipy.optimize import minimize_scalar

from .rep import TOL_PROB, DimensionParams, GeneralParams

SPHERE_TOL = 1e-8
# slack for pairs that saturate a bound exactly, e.g. two points on the out-sphere
TOL_GERM = 1e-12
BLOCK = 1024


@dataclass(frozen=True)
class QplexGeometry:
    params: DimensionParams | GeneralParams

    @property
    def N(self) -> int:
        return self.params.N

    @property
    def c(self) -> np.ndarray:
        return np.full(self.N, 1.0 / self.N)

    @property
    def basis(self) -> np.ndarray:
        """Row k is e_k(i) = (delta_ki + beta) / alpha."""
        p = self.params
        return (np.eye(p.N) + p.beta) / p.alpha

    @property
    def r_o2(self) -> float:
        p = self.params
        return (p.N - 1) / (p.N * p.alpha**2)

    @property
    def r_i2(self) -> float:
        n = self.params.N
        return 1.0 / (n * (n - 1))

    @property
    def r_m2(self) -> float:
        return 1.0 / (self.params.N * self.params.alpha)

    @property
    def r_o(self) -> float:
        return float(np.sqrt(self.r_o2))

    @property
    def r_i(self) -> float:
        return float(np.sqrt(self.r_i2))

    @property
    def r_m(self) -> float:
        return float(np.sqrt(self.r_m2))

    def dist2(self, p) -> np.ndarray | float:
        p = np.asarray(p, dtype=float)
        return np.sum((p - 1.0 / self.N) ** 2, axis=-1)

    def on_out_sphere(self, p, tol: float = SPHERE_TOL):
        return np.abs(np.sqrt(self.dist2(p)) - self.r_o) <= tol

    def in_sphere_point(self, toward) -> np.ndarray:
        """Point of the in-sphere on the ray from c through ``toward``."""
        v = np.asarray(toward, dtype=float) - self.c
        return self.c + self.r_i * v / np.linalg.norm(v)


def make_geometry(params: DimensionParams | GeneralParams) -> QplexGeometry:
    return QplexGeometry(params)


def _check_len(params, *vecs):
    for v in vecs:
        if np.shape(v)[-1] != params.N:
            raise ValueError(f"vector has {np.shape(v)[-1]} entries, expected {params.N}")


@dataclass(frozen=True)
class PairVerdict:
    inner: float
    consistent: bool


def check_pair(p, s, params, tol: float = TOL_GERM) -> PairVerdict:
    _check_len(params, p, s)
    ip = float(np.dot(p, s))
    return PairVerdict(ip, params.L - tol <= ip <= params.U + tol)


@dataclass(frozen=True)
class PointSet:
    points: np.ndarray
    labels: list[str] = field(default_factory=list)

    def __post_init__(self):
        pts = np.atleast_2d(np.asarray(self.points, dtype=float))
        object.__setattr__(self, "points", pts)
        if self.labels and len(self.labels) != len(pts):
            raise ValueError("labels and points differ in length")

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return len(self.points)


@dataclass
class ConsistencyReport:
    min_inner: float
    max_inner: float
    violations: list[tuple[int, int, float]]
    n_points: int
    truncated: bool = False

    @property
    def passed(self) -> bool:
        return not self.violations


def is_germ(points, params, tol: float = TOL_GERM, max_violations: int = 100) -> ConsistencyReport:
    """Check every pair, self-pairs included, against ``L <= <p,s> <= U``.

    Large sets are processed in row blocks so the Gram matrix is never held
    whole.
    """
    pts = points.points if isinstance(points, PointSet) else np.atleast_2d(np.asarray(points, float))
    _check_len(params, pts)
    lo_b, hi_b = params.L - tol, params.U + tol
    n = len(pts)
    lo, hi = np.inf, -np.inf
    bad: list[tuple[int, int, float]] = []
    truncated = False
    for r0 in range(0, n, BLOCK):
        for c0 in range(r0, n, BLOCK):
            g = pts[r0:r0 + BLOCK] @ pts[c0:c0 + BLOCK].T
            mask = (c0 + np.arange(g.shape[1]))[None, :] >= (r0 + np.arange(g.shape[0]))[:, None]
            vals = g[mask]
            lo = min(lo, float(vals.min()))
            hi = max(hi, float(vals.max()))
            for i, j in np.argwhere(mask & ((g < lo_b) | (g > hi_b))):
                if len(bad) >= max_violations:
                    truncated = True
                    break
                bad.append((r0 + int(i), c0 + int(j), float(g[i, j])))
    return ConsistencyReport(lo, hi, bad, n, truncated)


def _in_hyperplane(u, params, tol=TOL_PROB):
    u = np.asarray(u, dtype=float)
    if u.ndim != 1:
        raise ValueError(f"expected one vector, got shape {u.shape}")
    _check_len(params, u)
    if abs(u.sum() - 1) > tol:
        raise ValueError(f"vector is not in the hyperplane sum(u) = 1 (sum = {u.sum()!r})")
    return u


@dataclass(frozen=True)
class PolarVerdict:
    member: bool
    min_gap: float
    worst_index: int


def polar_membership(u, points, params, tol: float = 1e-12) -> PolarVerdict:
    """Is ``u`` in the polar of the set, i.e. <u, v> >= L for every v?"""
    u = _in_hyperplane(u, params)
    pts = points.points if isinstance(points, PointSet) else np.atleast_2d(np.asarray(points, float))
    gaps = pts @ u - params.L
    k = int(np.argmin(gaps))
    return PolarVerdict(bool(gaps[k] >= -tol), float(gaps[k]), k)


def polar_point(s, params, tol: float = 1e-14) -> np.ndarray:
    """c - (r_o r_i / |s - c|^2)(s - c); maps the out-sphere to the in-sphere."""
    s = _in_hyperplane(s, params)
    g = QplexGeometry(params)
    v = s - g.c
    n2 = v @ v
    if n2 <= tol**2:
        raise ValueError("polar point of the barycenter is undefined")
    return g.c - (g.r_o * g.r_i / n2) * v


def polar_hyperplane_gap(u, s, params) -> float:
    """<u, s> - L; zero exactly on the polar hyperplane of ``s``."""
    u = _in_hyperplane(u, params)
    s = _in_hyperplane(s, params)
    return float(u @ s - params.L)


@dataclass
class BoundsReport:
    max_entry: float
    zero_count: int
    max_entry_bound: float
    zero_bound: int
    saturated: bool
    saturation_dev: float | None
    tol: float

    @property
    def passed(self) -> bool:
        ok = self.max_entry <= self.max_entry_bound + self.tol and self.zero_count <= self.zero_bound
        if self.saturated:
            ok = ok and self.saturation_dev is not None and self.saturation_dev <= 1e-10
        return ok


def vector_bounds(p, params: DimensionParams, tol: float = 1e-12) -> BoundsReport:
    """Largest entry at most 1/d, at most d(d-1)/2 zeros; equality forces a basis distribution."""
    p = np.asarray(p, dtype=float)
    _check_len(params, p)
    d = params.d
    k = int(np.argmax(p))
    mx = float(p[k])
    zeros = int(np.sum(np.abs(p) <= tol))
    saturated = abs(mx - 1.0 / d) <= tol
    dev = None
    if saturated:
        rest = np.delete(p, k)
        dev = float(np.max(np.abs(rest - params.L)))
    return BoundsReport(mx, zeros, 1.0 / d, d * (d - 1) // 2, saturated, dev, tol)


def envelope_membership(p, geom: QplexGeometry, tol: float = 1e-12) -> bool:
    """Principal envelope: the probability simplex cut by the out-ball."""
    p = np.asarray(p, dtype=float)
    _check_len(geom.params, p)
    in_simplex = p.min() >= -tol and abs(p.sum() - 1) <= max(tol, TOL_PROB)
    return bool(in_simplex and geom.dist2(p) <= geom.r_o2 + tol)


def project_to_simplex(z: np.ndarray) -> np.ndarray:
    """Euclidean projection onto the probability simplex (sort-based)."""
    n = z.shape[0]
    u = np.sort(z)[::-1]
    css = np.cumsum(u) - 1
    k = np.nonzero(u - css / np.arange(1, n + 1) > 0)[0][-1]
    theta = css[k] / (k + 1)
    return np.maximum(z - theta, 0)


@dataclass
class StemVerdict:
    status: str  # "member", "non-member" or "indeterminate"
    residual: float
    lam: float
    weights: np.ndarray
    ball_point: np.ndarray
    evaluations: int

    @property
    def member(self) -> bool:
        return self.status == "member"

    def reconstruct(self, geom: QplexGeometry) -> np.ndarray:
        return self.lam * (self.weights @ geom.basis) + (1 - self.lam) * self.ball_point


def stem_membership(p, geom: QplexGeometry, tol: float = 1e-8, max_iter: int = 500) -> StemVerdict:
    """Membership in the principal stem, conv(basis simplex U in-ball).

    For a fixed mixing weight ``lam`` the best basis-simplex weights are a
    Euclidean projection onto the probability simplex and the best in-ball
    point is a clipped radial projection, so the residual is an explicit
    convex function of ``lam`` alone; that is minimized by bounded scalar
    search.  A residual in ``[tol, 10 tol]`` is reported as indeterminate.
    """
    prm = geom.params
    p = np.asarray(p, dtype=float)
    if p.ndim != 1:
        raise ValueError(f"stem membership takes one vector, got shape {p.shape}")
    _check_len(prm, p)
    n, c = prm.N, geom.c
    one = np.ones(n) / np.sqrt(n)

    def best(lam):
        t = p - (1 - lam) * c
        if lam > 0:
            w = project_to_simplex(prm.alpha * t / lam - prm.beta)
            a = (w + prm.beta) / prm.alpha
        else:
            w = np.full(n, 1.0 / n)
            a = c
        x = t - lam * a
        perp = x @ one
        par = x - perp * one
        g = np.linalg.norm(par) - (1 - lam) * geom.r_i
        return g, perp, par, w

    # the off-hyperplane part of the residual does not depend on lam, and the
    # in-plane gap is convex in lam
    def gap(lam):
        return best(lam)[0]

    res = minimize_scalar(gap, bounds=(0.0, 1.0), method="bounded",
                          options={"xatol": 1e-14, "maxiter": max_iter})
    evals = int(res.nfev) + 2
    lam = min((0.0, 1.0, float(res.x)), key=gap)
    g, perp, par, w = best(lam)
    resid = float(np.hypot(max(g, 0.0), perp))
    if lam < 1:
        norm = np.linalg.norm(par)
        shrink = min(1.0, (1 - lam) * geom.r_i / norm) if norm > 0 else 0.0
        y = c + shrink * par / (1 - lam)
    else:
        y = c.copy()
    if resid < tol:
        status = "member"
    elif resid > 10 * tol:
        status = "non-member"
    else:
        status = "indeterminate"
    return StemVerdict(status, resid, float(lam), w, y, evals)


def find_mmd_sets(points, params, tol: float = 1e-8, exhaustive_limit: int = 64) -> list[list[int]]:
    """Maximal subsets of out-sphere points that pairwise saturate the lower bound.

    Points off the out-sphere (beyond ``tol``) take no part.  Up to
    ``exhaustive_limit`` candidates every maximal clique of the "maximally
    distant" graph is enumerated; above that, one greedy maximal set is grown
    from each candidate in input order, so some maximal sets may be missed.
    """
    pts = points.points if isinstance(points, PointSet) else np.atleast_2d(np.asarray(points, float))
    _check_len(params, pts)
    geom = QplexGeometry(params)
    on = np.nonzero(geom.on_out_sphere(pts, tol))[0]
    if on.size == 0:
        return []
    sub = pts[on]
    adj = np.abs(sub @ sub.T - params.L) <= tol
    np.fill_diagonal(adj, False)
    if len(on) <= exhaustive_limit:
        graph = nx.Graph()
        graph.add_nodes_from(range(len(on)))
        graph.add_edges_from(zip(*np.nonzero(np.triu(adj))))
        cliques = [sorted(int(on[k]) for k in q) for q in nx.find_cliques(graph)]
        return sorted(cliques, key=lambda q: (-len(q), q))
    found = set()
    for seed in range(len(on)):
        members = [seed]
        for k in range(len(on)):
            if k != seed and all(adj[k, m] for m in members):
                members.append(k)
        found.add(tuple(sorted(int(on[k]) for k in members)))
    return sorted((list(q) for q in found), key=lambda q: (-len(q), q))
