"""The SIC representation: density operators as probability vectors.

Conventions: a probability vector ``p`` has ``N = d**2`` entries
``p(i) = Tr(rho Pi_i) / d``; a measurement matrix ``r`` has shape
``(outcomes, N)`` with ``r[j, i] = r(j|i)``.  Most functions accept a batch
of vectors along leading axes.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .linalg import TOL_EQ, TOL_PSD, check_hermitian, check_unitary
from .sic import QuasiSic, SicSystem, TripleProducts, triple_products

log = logging.getLogger(__name__)

TOL_PROB = 1e-10


@dataclass(frozen=True)
class DimensionParams:
    """Urgleichung constants for Hilbert-space dimension ``d``."""

    d: int

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("dimension must be at least 2")

    @property
    def N(self) -> int:
        return self.d * self.d

    @property
    def alpha(self) -> float:
        return self.d + 1.0

    @property
    def beta(self) -> float:
        return 1.0 / self.d

    @property
    def L(self) -> float:
        return 1.0 / (self.d * (self.d + 1))

    @property
    def U(self) -> float:
        return 2.0 / (self.d * (self.d + 1))

    @property
    def m_max(self) -> float:
        return float(self.d)


@dataclass(frozen=True)
class GeneralParams:
    """Constants of the generalized urgleichung ``q = sum_i (alpha p_i - beta) r(j|i)``.

    ``beta`` follows from normalization, ``alpha = N beta + 1``; ``L`` is the
    lower consistency bound ``beta / alpha`` and ``U`` the squared out-radius
    plus ``1/N``.
    """

    N: int
    alpha: float

    def __post_init__(self):
        if self.N < 2:
            raise ValueError("N must be at least 2")
        if not self.alpha > 1:
            raise ValueError(f"alpha must exceed 1, got {self.alpha}")

    @property
    def beta(self) -> float:
        return (self.alpha - 1) / self.N

    @property
    def L(self) -> float:
        return 1 / self.N - 1 / (self.N * self.alpha)

    @property
    def U(self) -> float:
        return (self.N - 1) / (self.N * self.alpha**2) + 1 / self.N

    @property
    def m_max(self) -> float:
        return 1 + (self.N - 1) / self.alpha

    @property
    def bounds_doubled(self) -> bool:
        """U = 2L, the relation that singles out the quantum family."""
        return bool(np.isclose(self.U, 2 * self.L, rtol=0, atol=1e-12))

    @property
    def quantum_point(self) -> bool:
        """N = (alpha - 1)^2, i.e. (N, alpha) = (d^2, d + 1)."""
        return bool(np.isclose(self.N, (self.alpha - 1) ** 2, rtol=0, atol=1e-9))

    @property
    def m_max_integral(self) -> bool:
        return bool(np.isclose(self.m_max, round(self.m_max), rtol=0, atol=1e-9))

    @property
    def d(self) -> int | None:
        """Hilbert-space dimension when the parameters are quantum, else None."""
        return round(self.alpha - 1) if self.quantum_point else None


Params = DimensionParams | GeneralParams


def as_prob_vector(p, n: int | None = None, tol: float = TOL_PROB) -> np.ndarray:
    """Validate a probability vector (or a batch, last axis).

    Entries in ``[-tol, 0)`` are clamped to zero and the vector renormalized;
    anything worse raises ``ValueError`` naming the offending index.
    """
    p = np.array(p, dtype=float)
    if n is not None and p.shape[-1] != n:
        raise ValueError(f"expected {n} entries, got {p.shape[-1]}")
    if not np.all(np.isfinite(p)):
        raise ValueError("probability vector has non-finite entries")
    flat = p.reshape(-1, p.shape[-1])
    bad = np.argwhere(flat < -tol)
    if bad.size:
        row, i = bad[0]
        raise ValueError(f"negative probability {flat[row, i]:.3e} at index {i}")
    sums = flat.sum(axis=1)
    if np.any(np.abs(sums - 1) > tol):
        raise ValueError(f"probabilities sum to {sums[np.argmax(np.abs(sums - 1))]!r}, expected 1")
    dusty = flat < 0
    if dusty.any():
        log.debug("clamping %d entries within %.1e of zero", int(dusty.sum()), tol)
        flat[dusty] = 0.0
        flat /= flat.sum(axis=1, keepdims=True)
    return flat.reshape(p.shape)


@dataclass(frozen=True)
class MeasurementMatrix:
    """Conditional probabilities ``r[j, i] = r(j|i)``."""

    r: np.ndarray

    def __post_init__(self):
        r = np.array(self.r, dtype=float)
        if r.ndim != 2:
            raise ValueError(f"measurement matrix must be 2-D, got shape {r.shape}")
        if not np.all(np.isfinite(r)):
            raise ValueError("measurement matrix has non-finite entries")
        object.__setattr__(self, "r", r)

    @property
    def outcomes(self) -> int:
        return self.r.shape[0]

    @property
    def inputs(self) -> int:
        return self.r.shape[1]

    @property
    def gamma(self) -> np.ndarray:
        return self.r.mean(axis=1)

    def problems(self, tol: float = TOL_PROB) -> list[str]:
        out = []
        lo = self.r.min()
        if lo < -tol:
            j, i = np.unravel_index(np.argmin(self.r), self.r.shape)
            out.append(f"negative conditional probability r({j}|{i}) = {lo:.3e}")
        col = np.abs(self.r.sum(axis=0) - 1).max()
        if col > tol:
            out.append(f"columns do not sum to 1 (max deviation {col:.3e})")
        return out

    @property
    def is_valid(self) -> bool:
        return not self.problems()


def _dim_of(system) -> int:
    return system.dim


def state_to_prob(rho, system: SicSystem | QuasiSic) -> np.ndarray:
    """p(i) = Tr(rho Pi_i) / d; ``rho`` may be a stack ``(..., d, d)``."""
    rho = np.asarray(rho, dtype=complex)
    d = _dim_of(system)
    if rho.shape[-2:] != (d, d):
        raise ValueError(f"state has shape {rho.shape[-2:]}, SIC dimension is {d}")
    return np.einsum("...ab,iba->...i", rho, system.projectors).real / d


def prob_to_operator(p, system: SicSystem | QuasiSic) -> np.ndarray:
    """sum_i [(d+1) p(i) - 1/d] Pi_i; trace one, not necessarily positive."""
    p = np.asarray(p, dtype=float)
    d = _dim_of(system)
    if p.shape[-1] != d * d:
        raise ValueError(f"vector has {p.shape[-1]} entries, expected {d * d}")
    w = (d + 1) * p - 1.0 / d
    return np.einsum("...i,iab->...ab", w, system.projectors)


@dataclass
class StateReport:
    min_eigenvalue: float
    quadratic_residual: float
    cubic_residual: float
    psd_tol: float = TOL_PSD
    purity_tol: float = 1e-8

    @property
    def is_state(self) -> bool:
        return self.min_eigenvalue >= -self.psd_tol

    @property
    def is_pure(self) -> bool:
        return (
            self.is_state
            and self.quadratic_residual < self.purity_tol
            and self.cubic_residual < self.purity_tol
        )


def validate_state_vector(
    p,
    system: SicSystem | QuasiSic,
    triples: TripleProducts | None = None,
) -> StateReport:
    d = _dim_of(system)
    p = np.asarray(p, dtype=float)
    if p.shape != (d * d,):
        raise ValueError(f"vector has shape {p.shape}, expected ({d * d},)")
    if triples is None:
        triples = triple_products(system)
    op = prob_to_operator(p, system)
    lo = np.linalg.eigvalsh(0.5 * (op + op.conj().T))[0]
    quad = abs(p @ p - 2.0 / (d * (d + 1)))
    cubic = abs(triples.cubic_form(p) - (d + 7) / (d + 1) ** 3)
    return StateReport(float(lo), float(quad), float(cubic))


def povm_to_measurement(effects, system: SicSystem | QuasiSic) -> MeasurementMatrix:
    """r(j|i) = Tr(E_j Pi_i) for a POVM ``effects``."""
    effects = np.asarray(effects, dtype=complex)
    d = _dim_of(system)
    if effects.ndim != 3 or effects.shape[1:] != (d, d):
        raise ValueError(f"effects must have shape (n, {d}, {d}), got {effects.shape}")
    for j, e in enumerate(effects):
        check_hermitian(e)
        lo = np.linalg.eigvalsh(e)[0]
        if lo < -TOL_PSD:
            raise ValueError(f"effect {j} has negative eigenvalue {lo:.3e}")
    total = np.abs(effects.sum(axis=0) - np.eye(d)).max()
    if total > TOL_EQ * max(1, len(effects)):
        raise ValueError(f"effects do not sum to the identity (max deviation {total:.3e})")
    r = np.einsum("jab,iba->ji", effects, system.projectors).real
    return MeasurementMatrix(r)


class UrgleichungResult(NamedTuple):
    q: np.ndarray
    consistent: bool


def urgleichung(p, r: MeasurementMatrix, params: Params, tol: float = TOL_PROB) -> UrgleichungResult:
    """q(j) = sum_i [alpha p(i) - beta] r(j|i).

    A negative output is returned as-is with ``consistent=False``: such a
    (state, measurement) pair is a diagnostic, not an error.
    """
    p = np.asarray(p, dtype=float)
    if p.shape[-1] != params.N or r.inputs != params.N:
        raise ValueError(
            f"length mismatch: p has {p.shape[-1]} entries, r has {r.inputs} inputs, N = {params.N}"
        )
    q = (params.alpha * p - params.beta) @ r.r.T
    return UrgleichungResult(q, bool(np.all(q >= -tol)))


def reference_rules(p, r: MeasurementMatrix, mode: str, params: Params) -> np.ndarray:
    """Classical total probability, or its shifted von Neumann form.

    ``mode="classical"``: q(j) = sum_i p(i) r(j|i).
    ``mode="von_neumann"``: q(j) = (d+1) sum_i p(i) r(j|i) - 1, which agrees
    with the urgleichung when r comes from d orthogonal rank-one projectors.
    """
    p = np.asarray(p, dtype=float)
    if p.shape[-1] != r.inputs:
        raise ValueError(f"length mismatch: p has {p.shape[-1]} entries, r has {r.inputs} inputs")
    classical = p @ r.r.T
    if mode == "classical":
        return classical
    if mode == "von_neumann":
        d = round(np.sqrt(params.N))
        if r.outcomes != d:
            raise ValueError(f"von Neumann form needs {d} outcomes, measurement has {r.outcomes}")
        return params.alpha * classical - 1
    raise ValueError(f"unknown mode {mode!r}")


def transition_matrix(u, system: SicSystem | QuasiSic) -> np.ndarray:
    """u[j, i] = Tr(U Pi_i U^dag Pi_j) / d."""
    d = _dim_of(system)
    u = check_unitary(u, 1e-10)
    if u.shape != (d, d):
        raise ValueError(f"unitary has shape {u.shape}, SIC dimension is {d}")
    p = system.projectors
    rot = u @ p @ u.conj().T
    return np.einsum("iab,jba->ji", rot, p).real / d


def evolve(p, u, system: SicSystem | QuasiSic, tol: float = TOL_PROB) -> np.ndarray:
    """Unitary evolution written as an urgleichung with the transition matrix."""
    d = _dim_of(system)
    p = np.asarray(p, dtype=float)
    if p.shape[-1] != d * d:
        raise ValueError(f"vector has {p.shape[-1]} entries, expected {d * d}")
    t = transition_matrix(u, system)
    dev = max(np.abs(t.sum(axis=0) - 1).max(), np.abs(t.sum(axis=1) - 1).max())
    if dev > tol:
        raise ArithmeticError(f"transition matrix not doubly stochastic (deviation {dev:.3e})")
    return ((d + 1) * p - 1.0 / d) @ t.T


def hs_from_probs(p, s, params: DimensionParams) -> float | np.ndarray:
    """Tr(rho sigma) = d(d+1) <p, s> - 1."""
    p = np.asarray(p, dtype=float)
    s = np.asarray(s, dtype=float)
    if p.shape[-1] != params.N or s.shape[-1] != params.N:
        raise ValueError(f"vectors must have {params.N} entries")
    d = params.d
    return d * (d + 1) * np.sum(p * s, axis=-1) - 1
