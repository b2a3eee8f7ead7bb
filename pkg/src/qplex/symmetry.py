"""Stretched measurement matrices and the symmetries they carry.

Convention: ``R[i, j]`` multiplies the source index ``j`` and produces the
target index ``i``, so a measurement acts as ``q = R @ p``.  The transfer
matrix of a unitary in the other common convention is ``R.T``, which for an
orthogonal ``R`` is also the transfer of ``U^dag``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .geometry import PointSet, QplexGeometry
from .linalg import as_rng, check_unitary
from .rep import TOL_PROB, DimensionParams, GeneralParams, MeasurementMatrix, validate_state_vector
from .sic import QuasiSic, SicSystem, triple_products

TOL_SYM = 1e-9


@dataclass(frozen=True)
class StretchedMatrix:
    R: np.ndarray

    def __post_init__(self):
        R = np.array(self.R, dtype=float)
        if R.ndim != 2 or R.shape[0] != R.shape[1]:
            raise ValueError(f"stretched matrix must be square, got shape {R.shape}")
        if not np.all(np.isfinite(R)):
            raise ValueError("stretched matrix has non-finite entries")
        object.__setattr__(self, "R", R)

    @property
    def n(self) -> int:
        return self.R.shape[0]

    def __matmul__(self, other: "StretchedMatrix") -> "StretchedMatrix":
        return StretchedMatrix(self.R @ other.R)

    @property
    def T(self) -> "StretchedMatrix":
        return StretchedMatrix(self.R.T)


@dataclass(frozen=True)
class MeasurementSimplex:
    vertices: np.ndarray  # row i is s_i


def _n_check(params, n):
    if n != params.N:
        raise ValueError(f"matrix has size {n}, expected N = {params.N}")


def stretch(r: MeasurementMatrix, params: DimensionParams | GeneralParams) -> StretchedMatrix:
    """R_ij = alpha r(i|j) - beta sum_k r(i|k)."""
    if r.outcomes != r.inputs:
        raise ValueError(f"measurement matrix is not square: {r.r.shape}")
    _n_check(params, r.inputs)
    rows = r.r.sum(axis=1, keepdims=True)
    return StretchedMatrix(params.alpha * r.r - params.beta * rows)


class Unstretched(NamedTuple):
    r: MeasurementMatrix
    problems: list[str]

    @property
    def is_measurement(self) -> bool:
        return not self.problems


def unstretch(R: StretchedMatrix, params: DimensionParams | GeneralParams,
              tol: float = TOL_PROB) -> Unstretched:
    """Inverse of :func:`stretch`: r(i|j) = (R_ij + beta sum_k R_ik) / alpha.

    The row sums of ``R`` and ``r`` coincide because ``alpha - N beta = 1``.
    The result is returned even when it is not a measurement; ``problems``
    then lists what fails.
    """
    _n_check(params, R.n)
    rows = R.R.sum(axis=1, keepdims=True)
    r = MeasurementMatrix((R.R + params.beta * rows) / params.alpha)
    return Unstretched(r, r.problems(tol))


def measurement_simplex(R: StretchedMatrix, params) -> MeasurementSimplex:
    """s_i(j) = (R_ij + beta) / alpha; the basis distributions when R = I."""
    _n_check(params, R.n)
    return MeasurementSimplex((R.R + params.beta) / params.alpha)


@dataclass
class SymmetryReport:
    orthogonality_defect: float
    barycenter_defect: float
    min_entry: float
    bound_violations: list[tuple[int, int, float]]
    row_sum_defect: float
    col_sum_defect: float
    vertex_norm_defect: float
    regularity_defect: float
    simplex: MeasurementSimplex = field(repr=False)
    tol: float = TOL_SYM

    @property
    def orthogonal(self) -> bool:
        return self.orthogonality_defect <= self.tol and self.barycenter_defect <= self.tol

    @property
    def stochastic(self) -> bool:
        """Orthogonal, fixes the barycenter, entries bounded below by -beta."""
        return (
            self.orthogonal
            and not self.bound_violations
            and self.row_sum_defect <= self.tol
            and self.col_sum_defect <= self.tol
        )

    @property
    def regular_simplex(self) -> bool:
        return self.vertex_norm_defect <= self.tol and self.regularity_defect <= self.tol

    @property
    def passed(self) -> bool:
        return self.stochastic and self.regular_simplex


def verify_stretched(R: StretchedMatrix, params, tol: float = TOL_SYM) -> SymmetryReport:
    """Report orthogonality, barycenter fixing, the entrywise bound and the
    regularity of the extracted measurement simplex.  Never raises on a
    failing matrix."""
    _n_check(params, R.n)
    geom = QplexGeometry(params)
    A = R.R
    n = R.n
    orth = float(np.abs(A @ A.T - np.eye(n)).max())
    bary = float(np.abs(A @ geom.c - geom.c).max())
    low = -params.beta - tol
    bad = [(int(i), int(j), float(A[i, j])) for i, j in np.argwhere(A < low)]
    rows = float(np.abs(A.sum(axis=1) - 1).max())
    cols = float(np.abs(A.sum(axis=0) - 1).max())

    simplex = measurement_simplex(R, params)
    s = simplex.vertices
    norm_dev = float(np.abs(np.sqrt(geom.dist2(s)) - geom.r_o).max())
    e = geom.basis
    target = float(e[0] @ e[1])
    g = s @ s.T
    off = g[~np.eye(n, dtype=bool)]
    reg = float(np.abs(off - target).max()) if off.size else 0.0
    return SymmetryReport(orth, bary, float(A.min()), bad, rows, cols, norm_dev, reg, simplex, tol)


def _transfer(rotated, system, params) -> StretchedMatrix:
    d = system.dim
    if params.N != d * d:
        raise ValueError(f"parameters have N = {params.N}, system has {d * d} elements")
    p = system.projectors
    tr = np.einsum("iab,jba->ij", p, rotated).real
    return StretchedMatrix(params.alpha * tr / d - params.beta)


def stretched_from_unitary(u, system: SicSystem | QuasiSic, params=None) -> StretchedMatrix:
    """R_ij = ((d+1)/d) Tr(Pi_i U Pi_j U^dag) - 1/d.

    ``q = R @ p`` is then the representation of ``U rho U^dag``.
    """
    d = system.dim
    params = params or DimensionParams(d)
    u = check_unitary(u, 1e-10)
    if u.shape != (d, d):
        raise ValueError(f"unitary has shape {u.shape}, system dimension is {d}")
    rotated = u @ system.projectors @ u.conj().T
    return _transfer(rotated, system, params)


def stretched_from_antiunitary(u, system: SicSystem | QuasiSic, params=None) -> StretchedMatrix:
    """Transfer of the anti-unitary ``rho -> U conj(rho) U^dag``.

    Complex conjugation is taken in the computational basis.
    """
    d = system.dim
    params = params or DimensionParams(d)
    u = check_unitary(u, 1e-10)
    if u.shape != (d, d):
        raise ValueError(f"unitary has shape {u.shape}, system dimension is {d}")
    rotated = u @ system.projectors.conj() @ u.conj().T
    return _transfer(rotated, system, params)


@dataclass
class ImageReport:
    n_points: int
    n_valid: int
    worst_min_eigenvalue: float
    worst_index: int
    n_purity_lost: int = 0

    @property
    def fraction(self) -> float:
        return self.n_valid / self.n_points if self.n_points else 1.0


def image_membership(R: StretchedMatrix, sample, system: SicSystem | QuasiSic,
                     params=None, check_purity: bool = False) -> ImageReport:
    """Apply ``R`` to each sampled state and count images that are still states.

    With ``check_purity`` the report also counts pure inputs whose image is
    not pure.
    """
    params = params or DimensionParams(system.dim)
    _n_check(params, R.n)
    pts = sample.points if isinstance(sample, PointSet) else np.atleast_2d(np.asarray(sample, float))
    triples = triple_products(system)
    images = pts @ R.R.T
    valid, lost = 0, 0
    worst, worst_k = np.inf, -1
    for k, (p, q) in enumerate(zip(pts, images)):
        rep = validate_state_vector(q, system, triples)
        valid += rep.is_state
        if rep.min_eigenvalue < worst:
            worst, worst_k = rep.min_eigenvalue, k
        if check_purity and validate_state_vector(p, system, triples).is_pure and not rep.is_pure:
            lost += 1
    return ImageReport(len(pts), valid, float(worst), worst_k, lost)


@dataclass
class ClosureReport:
    rejected_inputs: list[int]
    n_products: int
    failures: list[tuple[tuple[int, ...], bool, SymmetryReport]]
    worst_orthogonality: float
    worst_min_entry: float

    @property
    def passed(self) -> bool:
        return not self.rejected_inputs and not self.failures


def group_closure_check(sample: list[StretchedMatrix], params, n_products: int = 100,
                        seed=0, max_length: int = 4, tol: float = TOL_SYM) -> ClosureReport:
    """Test random words in the sample, and their transposes, for the
    stochastic-subgroup conditions.

    Inputs that fail on their own are flagged and left out of the products.
    Each failure records the word (indices into ``sample``), whether the
    transpose was taken, and the report.
    """
    rng = as_rng(seed)
    good, rejected = [], []
    for k, m in enumerate(sample):
        (good if verify_stretched(m, params, tol).stochastic else rejected).append(k)
    failures = []
    worst_orth, worst_min = 0.0, np.inf
    if good:
        for _ in range(n_products):
            length = int(rng.integers(1, max_length + 1))
            word = tuple(int(good[i]) for i in rng.integers(0, len(good), size=length))
            prod = np.eye(params.N)
            for k in word:
                prod = prod @ sample[k].R
            transpose = bool(rng.integers(0, 2))
            if transpose:
                prod = prod.T
            rep = verify_stretched(StretchedMatrix(prod), params, tol)
            worst_orth = max(worst_orth, rep.orthogonality_defect)
            worst_min = min(worst_min, rep.min_entry)
            if not rep.stochastic:
                failures.append((word, transpose, rep))
    return ClosureReport(rejected, n_products if good else 0, failures, worst_orth, float(worst_min))


def permutation_matrix(perm) -> StretchedMatrix:
    """Column-acting permutation: (P p)[perm[j]] = p[j]."""
    perm = np.asarray(perm)
    n = len(perm)
    if sorted(perm.tolist()) != list(range(n)):
        raise ValueError("not a permutation")
    P = np.zeros((n, n))
    P[perm, np.arange(n)] = 1.0
    return StretchedMatrix(P)
