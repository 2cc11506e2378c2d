"""Polar decomposition with partial-isometry semantics and functional calculus.

The polar factor U is built from the truncated SVD so that it vanishes on
the numerical kernel of |A|.  This matters whenever a function pair has
g(0) != 0 (e.g. the rational and exp pairs): the transform f(|A|) U g(|A|)
would change if U were completed to a full unitary on the kernel.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    EPS,
    HERMITIAN_RTOL,
    InvalidInputError,
    as_matrix,
    frobenius,
    hermitize,
    require_square,
)


@dataclass(frozen=True)
class PolarFactors:
    """A = isometry @ positive, with `isometry` a partial isometry
    vanishing on the numerical kernel of `positive`."""

    isometry: np.ndarray
    positive: np.ndarray
    numerical_rank: int
    rank_tolerance: float


def default_rank_tolerance(n: int, sigma_max: float) -> float:
    return n * EPS * sigma_max


def _clamp_tolerance(h: np.ndarray, scale: float) -> float:
    # scale is the spectral norm of the (nearly) PSD input.
    return 16.0 * h.shape[0] * EPS * scale


def polar_decompose(a: np.ndarray, rank_tolerance: float | None = None) -> PolarFactors:
    """Factor a square matrix as A = U P via the SVD.

    P = V diag(s) V* is the Hermitian PSD absolute value; U maps the top
    `numerical_rank` right singular vectors onto the corresponding left ones
    and is zero on the rest, so ker U matches the numerical kernel of P.
    A rank cutoff other than the default n * eps * sigma_max may be supplied.
    """
    a = require_square(as_matrix(a), "polar_decompose input")
    n = a.shape[0]
    u, s, vh = np.linalg.svd(a)
    if rank_tolerance is None:
        rank_tolerance = default_rank_tolerance(n, float(s[0]) if n else 0.0)
    rank = int(np.count_nonzero(s > rank_tolerance))
    isometry = u[:, :rank] @ vh[:rank, :]
    v = vh.conj().T
    positive = hermitize((v * s) @ vh)
    return PolarFactors(
        isometry=isometry,
        positive=positive,
        numerical_rank=rank,
        rank_tolerance=float(rank_tolerance),
    )


def abs_value(a: np.ndarray) -> np.ndarray:
    """Hermitian PSD square root of A*A.

    Eigenvalues of A*A inside the roundoff band [-tau, tau] with
    tau = 16 n eps ||A||^2 are snapped to exact zero before the square
    root; without the snap, kernel noise of order eps ||A||^2 would be
    amplified to sqrt(eps) ||A|| in the result.
    """
    a = require_square(as_matrix(a), "abs_value input")
    h = hermitize(a.conj().T @ a)
    values, vectors = np.linalg.eigh(h)
    scale = float(max(abs(values[0]), abs(values[-1]))) if values.size else 0.0
    tau = _clamp_tolerance(h, scale)
    values = np.where(values < tau, 0.0, values)
    return hermitize((vectors * np.sqrt(values)) @ vectors.conj().T)


def matrix_function(h: np.ndarray, fn, *, fn_label: str = "fn") -> np.ndarray:
    """Apply a scalar map to a Hermitian PSD matrix through its spectrum.

    Eigenvalues inside the roundoff band [-tau, tau] with
    tau = 16 n eps ||h|| are snapped to exact zero (so maps that are
    discontinuous at 0, like the endpoint power pairs, see the numerical
    kernel as a true kernel); anything below -tau is rejected as not PSD.
    """
    h = require_square(as_matrix(h), "matrix_function input")
    defect = frobenius(h - h.conj().T)
    if defect > HERMITIAN_RTOL * (1.0 + frobenius(h)):
        raise InvalidInputError(
            f"matrix_function({fn_label}): input is not Hermitian (defect {defect:.3e})"
        )
    values, vectors = np.linalg.eigh(hermitize(h))
    scale = float(max(abs(values[0]), abs(values[-1]))) if values.size else 0.0
    tau = _clamp_tolerance(h, scale)
    if values[0] < -tau:
        raise InvalidInputError(
            f"matrix_function({fn_label}): input is not PSD "
            f"(min eigenvalue {values[0]:.3e} < -{tau:.3e})"
        )
    values = np.where(values < tau, 0.0, values)
    with np.errstate(over="ignore"):
        mapped = np.asarray(fn(values), dtype=np.float64)
    if mapped.shape != values.shape:
        raise InvalidInputError(f"matrix_function({fn_label}): fn must be vectorized")
    if not np.all(np.isfinite(mapped)):
        raise InvalidInputError(
            f"matrix_function({fn_label}): fn produced non-finite values on the spectrum"
        )
    return hermitize((vectors * mapped) @ vectors.conj().T)


def range_projection(factors: PolarFactors) -> np.ndarray:
    """Spectral projection of the positive factor onto eigenvalues above
    the rank tolerance (the numerical range of |A|)."""
    values, vectors = np.linalg.eigh(hermitize(factors.positive))
    keep = vectors[:, values > factors.rank_tolerance]
    return keep @ keep.conj().T
