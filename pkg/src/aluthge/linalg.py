"""Dense complex matrix arithmetic and spectral primitives.

Everything downstream (polar decomposition, transforms, radius sweeps,
inequality checks) runs on plain ``numpy`` arrays of dtype complex128.
Matrices are validated on entry: finite entries, expected shape.  All
functions are pure and never mutate their arguments.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

EPS = float(np.finfo(np.float64).eps)

#: Relative Frobenius tolerance for accepting a matrix as Hermitian.
HERMITIAN_RTOL = 1e-8


class InvalidInputError(ValueError):
    """An operation rejected its input (shape, finiteness, or domain)."""


def as_matrix(values) -> np.ndarray:
    """Coerce to a complex128 2-D array, rejecting non-finite entries."""
    a = np.asarray(values, dtype=np.complex128)
    if a.ndim == 1:
        a = a.reshape(-1, 1)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise InvalidInputError(f"expected a non-empty 2-D matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InvalidInputError("matrix entries must be finite")
    return a


def require_square(a: np.ndarray, what: str = "matrix") -> np.ndarray:
    if a.shape[0] != a.shape[1]:
        raise InvalidInputError(f"{what} must be square, got shape {a.shape}")
    return a


def multiply(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product; dimensions must chain."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise InvalidInputError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def adjoint(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return as_matrix(a).conj().T.copy()


def frobenius(a: np.ndarray) -> float:
    return float(np.linalg.norm(a, "fro"))


def hermitize(a: np.ndarray) -> np.ndarray:
    """Average a matrix with its adjoint; absorbs roundoff asymmetry."""
    return 0.5 * (a + a.conj().T)


@dataclass(frozen=True)
class HermitianEigen:
    """Eigendecomposition H = Q diag(values) Q* with `values` ascending."""

    values: np.ndarray
    vectors: np.ndarray


@dataclass(frozen=True)
class Svd:
    """Decomposition A = left @ diag(singulars) @ right*  (singulars descending)."""

    left: np.ndarray
    singulars: np.ndarray
    right: np.ndarray


def herm_eigen(h: np.ndarray) -> HermitianEigen:
    """Eigendecomposition of a Hermitian matrix.

    The input is accepted if ``norm(h - h*)_F <= 1e-8 * (1 + norm(h)_F)`` and
    is symmetrized before factoring, so callers may pass products like A*A
    that are Hermitian only up to roundoff.
    """
    h = require_square(as_matrix(h), "herm_eigen input")
    defect = frobenius(h - h.conj().T)
    if defect > HERMITIAN_RTOL * (1.0 + frobenius(h)):
        raise InvalidInputError(
            f"matrix is not Hermitian: asymmetry {defect:.3e} exceeds tolerance"
        )
    values, vectors = np.linalg.eigh(hermitize(h))
    return HermitianEigen(values=values, vectors=vectors)


def svd(a: np.ndarray) -> Svd:
    """Full singular value decomposition (descending singular values)."""
    a = as_matrix(a)
    u, s, vh = np.linalg.svd(a)
    return Svd(left=u, singulars=s, right=vh.conj().T)


def operator_norm(a: np.ndarray) -> float:
    """Largest singular value."""
    a = as_matrix(a)
    return float(np.linalg.svd(a, compute_uv=False)[0])


def spectral_radius(a: np.ndarray) -> float:
    """Largest eigenvalue modulus of a square matrix."""
    a = require_square(as_matrix(a), "spectral_radius input")
    return float(np.max(np.abs(np.linalg.eigvals(a))))
