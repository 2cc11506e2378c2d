"""Generalized Aluthge transforms and block-matrix constructors."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import InvalidInputError, as_matrix, require_square
from .pairs import FunctionPair, make_power_pair
from .polar import PolarFactors, matrix_function, polar_decompose


@dataclass(frozen=True)
class TransformResult:
    """f(P) U g(P) together with the polar factors it was built from."""

    transformed: np.ndarray
    factors: PolarFactors
    pair_label: str


def aluthge_general(a: np.ndarray, pair: FunctionPair) -> TransformResult:
    """The transform f(|A|) U g(|A|) for a square matrix A = U |A|."""
    a = require_square(as_matrix(a), "transform input")
    factors = polar_decompose(a)
    f_p = matrix_function(factors.positive, pair.f, fn_label=f"{pair.label}.f")
    g_p = matrix_function(factors.positive, pair.g, fn_label=f"{pair.label}.g")
    transformed = f_p @ factors.isometry @ g_p
    return TransformResult(transformed=transformed, factors=factors, pair_label=pair.label)


def aluthge_t(a: np.ndarray, t: float) -> TransformResult:
    """The power-pair transform |A|^t U |A|^(1-t); t = 1 gives |A| U."""
    return aluthge_general(a, make_power_pair(t))


def offdiag_embed(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """The block matrix [[0, a], [b, 0]] for equal-size square blocks."""
    a = require_square(as_matrix(a), "offdiag block")
    b = require_square(as_matrix(b), "offdiag block")
    if a.shape != b.shape:
        raise InvalidInputError(f"offdiag blocks must match: {a.shape} vs {b.shape}")
    n = a.shape[0]
    out = np.zeros((2 * n, 2 * n), dtype=np.complex128)
    out[:n, n:] = a
    out[n:, :n] = b
    return out


def block2x2(a: np.ndarray, b: np.ndarray, c: np.ndarray, d: np.ndarray) -> np.ndarray:
    """The block matrix [[a, b], [c, d]] for equal-size square blocks."""
    blocks = [require_square(as_matrix(m), "block2x2 block") for m in (a, b, c, d)]
    shape = blocks[0].shape
    if any(m.shape != shape for m in blocks):
        raise InvalidInputError("block2x2 blocks must all have the same square shape")
    n = shape[0]
    out = np.empty((2 * n, 2 * n), dtype=np.complex128)
    out[:n, :n] = blocks[0]
    out[:n, n:] = blocks[1]
    out[n:, :n] = blocks[2]
    out[n:, n:] = blocks[3]
    return out
