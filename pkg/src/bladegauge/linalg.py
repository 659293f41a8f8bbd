"""Dense complex linear algebra kernel.

All operations are pure functions on immutable numpy arrays; results are
reproducible bit-for-bit for identical inputs and seeds.  Matrix sizes stay
small (N <= ~8), so the unitary exponential goes through an eigendecomposition
of its Hermitian argument rather than scaling-and-squaring: that keeps the
unitarity of the result exact up to rounding.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatchError, DomainError
from .tolerances import DEFAULT as TOL

__all__ = [
    "dagger", "hermitian_part", "antihermitian_part", "commutator",
    "matmul", "add", "scale", "max_abs", "is_hermitian",
    "unitary_exp", "unitary_exp_frechet",
    "random_hermitian", "random_unitary",
    "SIGMA_X", "SIGMA_Y", "SIGMA_Z",
]

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


def dagger(m):
    """Conjugate transpose."""
    return np.conjugate(np.asarray(m)).T


def hermitian_part(m):
    m = np.asarray(m, dtype=complex)
    return 0.5 * (m + dagger(m))


def antihermitian_part(m):
    m = np.asarray(m, dtype=complex)
    return 0.5 * (m - dagger(m))


def commutator(m, n):
    """MN - NM."""
    m = np.asarray(m)
    n = np.asarray(n)
    if m.shape[-1] != n.shape[-2] or n.shape[-1] != m.shape[-2]:
        raise DimensionMismatchError(
            f"commutator needs square-compatible shapes, got {m.shape} and {n.shape}")
    return m @ n - n @ m


def matmul(m, n):
    m = np.asarray(m)
    n = np.asarray(n)
    if m.shape[-1] != n.shape[0]:
        raise DimensionMismatchError(f"cannot multiply {m.shape} by {n.shape}")
    return m @ n


def add(m, n):
    m = np.asarray(m)
    n = np.asarray(n)
    if m.shape != n.shape:
        raise DimensionMismatchError(f"cannot add {m.shape} and {n.shape}")
    return m + n


def scale(m, c):
    return np.asarray(m) * c


def max_abs(m):
    """Max-abs (entrywise sup) norm; the norm used by all tolerance checks."""
    m = np.asarray(m)
    if m.size == 0:
        return 0.0
    return float(np.max(np.abs(m)))


def is_hermitian(m, tol=TOL.hermitian_input):
    return max_abs(np.asarray(m) - dagger(m)) <= tol


def unitary_exp(h, t=1.0):
    """exp(i t H) for Hermitian H, via eigendecomposition.

    Raises DomainError if H deviates from Hermiticity by more than the
    input tolerance.
    """
    h = np.asarray(h, dtype=complex)
    if not is_hermitian(h):
        raise DomainError(
            f"unitary_exp requires a Hermitian argument "
            f"(max anti-hermitian part {max_abs(h - dagger(h)):.3e})")
    lam, q = np.linalg.eigh(hermitian_part(h))
    return (q * np.exp(1j * t * lam)) @ dagger(q)


def unitary_exp_frechet(h, e, t=1.0):
    """Directional derivative of H -> exp(i t H) at Hermitian H along E.

    Uses the eigenbasis divided-difference (Daleckii-Krein) formula for
    f(x) = exp(i t x); near-degenerate eigenvalue pairs fall back to the
    midpoint derivative, which keeps the formula second-order accurate.
    """
    h = np.asarray(h, dtype=complex)
    e = np.asarray(e, dtype=complex)
    lam, q = np.linalg.eigh(hermitian_part(h))
    f = np.exp(1j * t * lam)
    den = lam[:, None] - lam[None, :]
    close = np.abs(den) < 1e-12
    mid = 1j * t * np.exp(1j * t * 0.5 * (lam[:, None] + lam[None, :]))
    gamma = np.where(close, mid, (f[:, None] - f[None, :]) / np.where(close, 1.0, den))
    return q @ (gamma * (dagger(q) @ e @ q)) @ dagger(q)


def random_hermitian(n, seed, scale_=1.0):
    """Seeded random Hermitian n x n matrix (GUE-style, then symmetrized)."""
    if n < 1:
        raise DimensionMismatchError("matrix dimension must be >= 1")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return scale_ * hermitian_part(g)


def random_unitary(n, seed):
    """Seeded random unitary, constructed as exp(i H) of a random Hermitian."""
    return unitary_exp(random_hermitian(n, seed), 1.0)
