"""Complex linear algebra helpers: Hermitian checks, spectra, Haar sampling.

Operators are plain ``numpy`` complex arrays of shape ``(d, d)``.  The
``check_*`` functions validate and return the array so they can be used
inline.

Randomness goes through :func:`numpy.random.default_rng` (PCG64).  Every
sampler accepts either an integer seed or an existing ``Generator``;
independent streams for parallel workers are obtained with
:func:`spawn_rngs`, which splits a single ``SeedSequence``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

TOL_EQ = 1e-12
TOL_EIG = 1e-10
TOL_PSD = 1e-10


def as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def spawn_rngs(seed: int, n: int) -> list[np.random.Generator]:
    """Return ``n`` statistically independent generators derived from ``seed``."""
    children = np.random.SeedSequence(seed).spawn(n)
    return [np.random.default_rng(s) for s in children]


def _square(a, name="matrix") -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise ValueError(f"{name} must be a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} has non-finite entries")
    return a


def hermitian_defect(a) -> float:
    a = np.asarray(a)
    return float(np.max(np.abs(a - a.conj().T)))


def check_hermitian(a, tol: float = TOL_EQ) -> np.ndarray:
    a = _square(a, "operator")
    err = hermitian_defect(a)
    if err > tol:
        raise ValueError(f"operator is not Hermitian: max |H - H^dag| = {err:.3e} > {tol:.1e}")
    return a


def check_unitary(u, tol: float = TOL_EQ) -> np.ndarray:
    u = _square(u, "unitary")
    err = float(np.max(np.abs(u @ u.conj().T - np.eye(u.shape[0]))))
    if err > tol:
        raise ValueError(f"matrix is not unitary: max |U U^dag - I| = {err:.3e}")
    return u


def check_density(rho, tol: float = TOL_EQ, psd_tol: float = TOL_PSD) -> np.ndarray:
    rho = check_hermitian(rho, tol)
    tr = np.trace(rho).real
    if abs(tr - 1) > tol:
        raise ValueError(f"density operator has trace {tr!r}, expected 1")
    lo = np.linalg.eigvalsh(rho)[0]
    if lo < -psd_tol:
        raise ValueError(f"density operator has negative eigenvalue {lo:.3e}")
    return rho


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues of a Hermitian operator, in both sort orders."""

    ascending: np.ndarray
    vectors: np.ndarray  # columns match ``ascending``

    @property
    def descending(self) -> np.ndarray:
        return self.ascending[::-1]

    def reconstruct(self) -> np.ndarray:
        v = self.vectors
        return (v * self.ascending) @ v.conj().T


def hermitian_eigen(h, tol: float = TOL_EQ) -> Spectrum:
    h = check_hermitian(h, tol)
    # symmetrize so LAPACK sees exactly Hermitian input
    w, v = np.linalg.eigh(0.5 * (h + h.conj().T))
    return Spectrum(ascending=w, vectors=v)


def hs_inner(a, b, tol: float = TOL_EQ) -> float:
    """Hilbert-Schmidt inner product Tr(AB) of two Hermitian operators."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    val = np.sum(a * b.T)
    if abs(val.imag) > tol * max(1.0, abs(val.real)):
        raise ValueError(f"Tr(AB) has imaginary part {val.imag:.3e}; inputs not Hermitian?")
    return float(val.real)


def haar_unitary(d: int, seed=None) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Ginibre matrix.

    The phases of ``diag(R)`` are moved into ``Q`` so the result is Haar
    rather than merely unitary.
    """
    if d < 1:
        raise ValueError("dimension must be at least 1")
    rng = as_rng(seed)
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


def random_kets(d: int, n: int, seed=None) -> np.ndarray:
    """``n`` Haar-random unit vectors in C^d, shape ``(n, d)``."""
    rng = as_rng(seed)
    z = rng.standard_normal((n, d)) + 1j * rng.standard_normal((n, d))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def random_density(d: int, rank: int, seed=None) -> np.ndarray:
    """Random density operator of the given rank.

    ``rank == 1`` gives a Haar-random pure state; otherwise the induced
    (Ginibre ``G G^dag``) measure, which has full support almost surely
    when ``rank == d``.
    """
    if d < 1:
        raise ValueError("dimension must be at least 1")
    if not 1 <= rank <= d:
        raise ValueError(f"rank must lie in [1, {d}], got {rank}")
    rng = as_rng(seed)
    g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    rho = g @ g.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return rho / np.trace(rho).real


def random_densities(d: int, rank: int, n: int, seed=None) -> np.ndarray:
    """Batch version of :func:`random_density`, shape ``(n, d, d)``."""
    if not 1 <= rank <= d:
        raise ValueError(f"rank must lie in [1, {d}], got {rank}")
    rng = as_rng(seed)
    g = rng.standard_normal((n, d, rank)) + 1j * rng.standard_normal((n, d, rank))
    rho = g @ np.conj(np.swapaxes(g, 1, 2))
    rho = 0.5 * (rho + np.conj(np.swapaxes(rho, 1, 2)))
    return rho / np.trace(rho, axis1=1, axis2=2).real[:, None, None]


def projector(ket) -> np.ndarray:
    ket = np.asarray(ket, dtype=complex)
    return np.outer(ket, ket.conj())
