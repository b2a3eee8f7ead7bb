"""SIC construction from Weyl-Heisenberg fiducials, plus quasi-SICs.

A SIC in dimension ``d`` is a set of ``d**2`` rank-one projectors with
``Tr(P_k P_l) = (d delta_kl + 1) / (d + 1)``.  Here they are generated as
the orbit of a fiducial vector under the displacement operators
``D_ab = tau**(a*b) X**a Z**b`` and stored lexicographically in ``(a, b)``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np
from scipy.linalg import helmert
from scipy.optimize import least_squares

from .linalg import spawn_rngs

log = logging.getLogger(__name__)

TOL_SIC = 1e-8
TOL_BUILD = 1e-8


class FiducialSearchError(RuntimeError):
    def __init__(self, d: int, best_defect: float, restarts: int, tol: float, best=None):
        self.d = d
        self.best_defect = best_defect
        self.best = best  # best SicFiducial seen, for inspection or a looser acceptance
        self.restarts = restarts
        self.tol = tol
        super().__init__(
            f"no fiducial with defect < {tol:g} in d={d} after {restarts} restarts "
            f"(best defect {best_defect:.3e})"
        )


def shift_matrix(d: int) -> np.ndarray:
    """Cyclic shift X|k> = |k+1 mod d>."""
    return np.roll(np.eye(d, dtype=complex), 1, axis=0)


def clock_matrix(d: int) -> np.ndarray:
    """Clock Z|k> = omega**k |k>, omega = exp(2 pi i / d)."""
    return np.diag(np.exp(2j * np.pi * np.arange(d) / d))


@dataclass(frozen=True)
class WHGroup:
    dim: int

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be positive")

    @property
    def tau(self) -> complex:
        # -exp(i pi / d): squares to omega and keeps D_ab of order d for even d
        return -np.exp(1j * np.pi / self.dim)

    def displacement(self, a: int, b: int) -> np.ndarray:
        d = self.dim
        if not (0 <= a < d and 0 <= b < d):
            raise ValueError(f"displacement indices must lie in [0, {d}), got ({a}, {b})")
        x = np.linalg.matrix_power(shift_matrix(d), a)
        z = np.linalg.matrix_power(clock_matrix(d), b)
        return self.tau ** (a * b) * (x @ z)

    @cached_property
    def displacements(self) -> np.ndarray:
        """All ``d**2`` displacements, shape ``(d*d, d, d)``, lexicographic in (a, b)."""
        d = self.dim
        return np.array([self.displacement(a, b) for a in range(d) for b in range(d)])


def wh_displacement(group: WHGroup | int, a: int, b: int) -> np.ndarray:
    if not isinstance(group, WHGroup):
        group = WHGroup(int(group))
    return group.displacement(a, b)


@dataclass(frozen=True)
class SicFiducial:
    dim: int
    vector: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vector, dtype=complex).reshape(-1)
        if v.shape != (self.dim,):
            raise ValueError(f"fiducial needs {self.dim} amplitudes, got {v.shape[0]}")
        if not np.all(np.isfinite(v)):
            raise ValueError("fiducial has non-finite amplitudes")
        norm = np.linalg.norm(v)
        if abs(norm - 1) > 1e-12:
            raise ValueError(f"fiducial must be normalized, |psi| = {norm!r}")
        object.__setattr__(self, "vector", v)

    @classmethod
    def from_unnormalized(cls, vector) -> "SicFiducial":
        v = np.asarray(vector, dtype=complex).reshape(-1)
        return cls(v.shape[0], v / np.linalg.norm(v))


def _overlaps_sq(psi: np.ndarray) -> np.ndarray:
    """|<psi|D_ab|psi>|**2 for all (a, b), shape ``(d, d)``.

    For fixed a the b-dependence is a discrete Fourier transform of
    conj(psi_{k+a}) psi_k, so the whole table costs d FFTs.
    """
    d = psi.shape[0]
    k = np.arange(d)
    v = np.conj(psi[(k[None, :] + k[:, None]) % d]) * psi[None, :]
    g = d * np.fft.ifft(v, axis=1)
    return np.abs(g) ** 2


def sic_defect(fiducial: SicFiducial | np.ndarray) -> float:
    """Sum over (a, b) != (0, 0) of (|<psi|D_ab|psi>|^2 - 1/(d+1))^2."""
    if not isinstance(fiducial, SicFiducial):
        v = np.asarray(fiducial, dtype=complex)
        fiducial = SicFiducial(v.shape[0], v)
    psi = fiducial.vector
    d = psi.shape[0]
    res = _overlaps_sq(psi).reshape(-1)[1:] - 1.0 / (d + 1)
    return float(np.sum(res**2))


class _DefectResiduals:
    """Residuals and analytic Jacobian for the phase-fixed real parameterization.

    Parameters are ``x = (Re z_0..z_{d-1}, Im z_1..z_{d-1})``; Im z_0 is pinned
    to zero to remove the global phase.  The residuals are scale invariant
    in z, so no explicit normalization constraint is needed.
    """

    def __init__(self, d: int):
        self.d = d
        self.D = WHGroup(d).displacements[1:]
        self.target = 1.0 / (d + 1)

    def to_complex(self, x: np.ndarray) -> np.ndarray:
        d = self.d
        return x[:d] + 1j * np.concatenate(([0.0], x[d:]))

    def from_complex(self, z: np.ndarray) -> np.ndarray:
        z = z * np.exp(-1j * np.angle(z[0]))
        return np.concatenate((z.real, z.imag[1:]))

    def residuals(self, x: np.ndarray) -> np.ndarray:
        z = self.to_complex(x)
        n = np.vdot(z, z).real
        h = np.einsum("a,kab,b->k", z.conj(), self.D, z)
        return np.abs(h) ** 2 / n**2 - self.target

    def jacobian(self, x: np.ndarray) -> np.ndarray:
        z = self.to_complex(x)
        n = np.vdot(z, z).real
        Dz = self.D @ z
        DHz = np.conj(np.swapaxes(self.D, 1, 2)) @ z
        h = Dz @ z.conj()
        grad = (np.conj(h)[:, None] * Dz + h[:, None] * DHz) / n**2
        grad -= 2 * (np.abs(h) ** 2 / n**3)[:, None] * z[None, :]
        # d/du = 2 Re(d/dz*), d/dv = 2 Im(d/dz*)
        return np.hstack((2 * grad.real, 2 * grad.imag[:, 1:]))


def find_sic_fiducial(
    d: int,
    seed: int = 0,
    tol: float = 1e-16,
    max_restarts: int = 50,
) -> SicFiducial:
    """Multi-start Levenberg-Marquardt search for a Weyl-Heisenberg SIC fiducial.

    Each restart starts from a Haar-random vector drawn from its own spawned
    stream, so the result depends only on ``(d, seed, tol, max_restarts)``.
    Raises :class:`FiducialSearchError` carrying the best defect found when
    no restart gets strictly below ``tol``.
    """
    if d < 2:
        raise ValueError("SIC search needs d >= 2")
    if max_restarts < 1:
        raise ValueError("max_restarts must be positive")
    prob = _DefectResiduals(d)
    best_defect, best = np.inf, None
    for attempt, rng in enumerate(spawn_rngs(seed, max_restarts)):
        z0 = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        fit = least_squares(
            prob.residuals,
            prob.from_complex(z0 / np.linalg.norm(z0)),
            jac=prob.jacobian,
            method="lm",
            xtol=1e-15,
            ftol=1e-15,
            gtol=1e-15,
            max_nfev=2000,
        )
        cand = SicFiducial.from_unnormalized(prob.to_complex(fit.x))
        defect = sic_defect(cand)
        log.debug("d=%d restart %d: defect %.3e", d, attempt, defect)
        if defect < best_defect:
            best_defect, best = defect, cand
        if defect < tol:
            return cand
    raise FiducialSearchError(d, best_defect, max_restarts, tol, best)


def known_fiducial(d: int) -> SicFiducial:
    """Closed-form fiducials for d = 2 (tetrahedral) and d = 3."""
    if d == 2:
        theta = np.arccos(1 / np.sqrt(3))
        v = [np.cos(theta / 2), np.exp(1j * np.pi / 4) * np.sin(theta / 2)]
    elif d == 3:
        v = np.array([0, 1, -1]) / np.sqrt(2)
    else:
        raise ValueError(f"no closed-form fiducial stored for d={d}")
    return SicFiducial.from_unnormalized(v)


@dataclass(frozen=True)
class SicSystem:
    """``d**2`` operators ``Pi_i`` with the SIC Gram matrix, shape ``(N, d, d)``."""

    dim: int
    projectors: np.ndarray
    provenance: str = "explicit"
    fiducial: SicFiducial | None = field(default=None, compare=False)

    def __post_init__(self):
        p = np.asarray(self.projectors, dtype=complex)
        d = self.dim
        if p.shape != (d * d, d, d):
            raise ValueError(f"expected projectors of shape {(d * d, d, d)}, got {p.shape}")
        object.__setattr__(self, "projectors", p)

    @property
    def n(self) -> int:
        return self.dim * self.dim

    def gram(self) -> np.ndarray:
        """Tr(Pi_i Pi_j)."""
        p = self.projectors
        return np.einsum("iab,jba->ij", p, p).real


def sic_from_fiducial(fiducial: SicFiducial, tol: float = TOL_BUILD) -> SicSystem:
    defect = sic_defect(fiducial)
    if not defect < tol:
        raise ValueError(f"fiducial defect {defect:.3e} exceeds build tolerance {tol:g}")
    d = fiducial.dim
    D = WHGroup(d).displacements
    kets = D @ fiducial.vector
    proj = np.einsum("ia,ib->iab", kets, kets.conj())
    return SicSystem(d, proj, provenance="fiducial", fiducial=fiducial)


@lru_cache(maxsize=None)
def standard_sic(d: int) -> SicSystem:
    """A fixed SIC per dimension: closed form where stored, else the seed-0 search."""
    fid = known_fiducial(d) if d in (2, 3) else find_sic_fiducial(d, seed=0)
    return sic_from_fiducial(fid)


@dataclass
class SicReport:
    dim: int
    trace_dev: float
    idempotency_dev: float
    overlap_dev: float
    resolution_dev: float
    tol: float
    worst_projector: int

    @property
    def passed(self) -> bool:
        return max(self.trace_dev, self.idempotency_dev, self.overlap_dev, self.resolution_dev) < self.tol

    @property
    def failures(self) -> list[str]:
        names = ("trace_dev", "idempotency_dev", "overlap_dev", "resolution_dev")
        return [k for k in names if not getattr(self, k) < self.tol]


def verify_sic(system: SicSystem, tol: float = TOL_SIC) -> SicReport:
    """Max deviation of each defining property; report only, never raises."""
    d, p = system.dim, system.projectors
    tr = np.abs(np.trace(p, axis1=1, axis2=2) - 1)
    idem = np.max(np.abs(p @ p - p), axis=(1, 2))
    target = (d * np.eye(d * d) + 1) / (d + 1)
    overlap = np.max(np.abs(np.einsum("iab,jba->ij", p, p) - target))
    resolution = np.max(np.abs(p.sum(axis=0) / d - np.eye(d)))
    return SicReport(
        dim=d,
        trace_dev=float(tr.max()),
        idempotency_dev=float(idem.max()),
        overlap_dev=float(overlap),
        resolution_dev=float(resolution),
        tol=tol,
        worst_projector=int(np.argmax(idem)),
    )


def gell_mann_basis(d: int) -> np.ndarray:
    """Generalized Gell-Mann matrices scaled to unit Hilbert-Schmidt norm.

    Returns the ``d**2 - 1`` traceless Hermitian elements, shape
    ``(d*d - 1, d, d)``, ordered symmetric, antisymmetric, diagonal.
    """
    sym, anti, diag = [], [], []
    for j in range(d):
        for k in range(j + 1, d):
            s = np.zeros((d, d), dtype=complex)
            s[j, k] = s[k, j] = 1 / np.sqrt(2)
            sym.append(s)
            a = np.zeros((d, d), dtype=complex)
            a[j, k], a[k, j] = -1j / np.sqrt(2), 1j / np.sqrt(2)
            anti.append(a)
    for l in range(1, d):
        v = np.zeros(d)
        v[:l] = 1
        v[l] = -l
        diag.append(np.diag(v / np.sqrt(l * (l + 1))).astype(complex))
    return np.array(sym + anti + diag)


def regular_simplex(n: int) -> np.ndarray:
    """``n`` unit vectors in R^(n-1) with pairwise inner product -1/(n-1)."""
    h = helmert(n)  # (n-1, n), rows orthonormal and orthogonal to ones
    v = h.T
    return v / np.linalg.norm(v, axis=1, keepdims=True)


@dataclass(frozen=True)
class QuasiSic:
    """Trace-one operators with the SIC Gram matrix but no positivity."""

    dim: int
    operators: np.ndarray
    basis: np.ndarray  # the simplex elements B_j

    @property
    def projectors(self) -> np.ndarray:
        # same attribute name as SicSystem so downstream code takes either
        return self.operators

    @property
    def n(self) -> int:
        return self.dim * self.dim

    def gram(self) -> np.ndarray:
        p = self.operators
        return np.einsum("iab,jba->ij", p, p).real


def build_quasi_sic(d: int) -> QuasiSic:
    if d < 2:
        raise ValueError("quasi-SIC needs d >= 2")
    g = gell_mann_basis(d)
    x = regular_simplex(d * d)
    b = np.einsum("jm,mab->jab", x, g)
    ops = np.sqrt((d - 1) / d) * b + np.eye(d) / d
    return QuasiSic(d, ops, b)


def reflected_quasi_sic(system: SicSystem) -> QuasiSic:
    """The quasi-SIC (2/d) I - Pi_j built from a genuine SIC.

    Its Gram matrix equals the SIC's and so does every unitary transfer
    matrix; for d > 2 each operator has the eigenvalue 2/d - 1 < 0.
    """
    d = system.dim
    ops = (2.0 / d) * np.eye(d) - system.projectors
    b = (ops - np.eye(d) / d) / np.sqrt((d - 1) / d)
    return QuasiSic(d, ops, b)


@dataclass(frozen=True)
class TripleProducts:
    dim: int
    tensor: np.ndarray

    def cubic_form(self, p: np.ndarray) -> float:
        return float(np.einsum("ijk,i,j,k->", self.tensor, p, p, p))


def triple_products(system: SicSystem | QuasiSic) -> TripleProducts:
    """c_ijk = Re Tr(Pi_i Pi_j Pi_k)."""
    p = system.projectors
    pair = np.einsum("iab,jbc->ijac", p, p)
    c = np.einsum("ijac,kca->ijk", pair, p).real
    return TripleProducts(system.dim, c)
