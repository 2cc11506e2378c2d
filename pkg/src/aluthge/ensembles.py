"""Seeded random matrix ensembles.

Every ensemble is a pure function of (kind, dim, seed): the same triple
reproduces the identical matrix bit for bit, which is what makes harness
runs replayable and schedule-independent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import InvalidInputError

DIM_MIN = 2
DIM_MAX = 16

KINDS = (
    "ginibre",
    "haar_unitary",
    "hermitian_psd",
    "normal",
    "nilpotent_shift",
    "rank_deficient",
    "scaled",
)


@dataclass(frozen=True)
class MatrixEnsemble:
    """A draw specification; `base_kind` only matters for kind='scaled'."""

    kind: str
    dim: int
    seed: int
    base_kind: str = "ginibre"


def _rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(np.random.PCG64(int(seed)))


def _ginibre(rng, n):
    return (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)


def _haar_unitary(rng, n):
    z = _ginibre(rng, n)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def _hermitian_psd(rng, n):
    b = _ginibre(rng, n)
    return b.conj().T @ b


def _normal(rng, n):
    q = _haar_unitary(rng, n)
    d = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return (q * d) @ q.conj().T


def _nilpotent_shift(rng, n):
    return np.diag(np.ones(n - 1, dtype=np.complex128), k=1)


def _rank_deficient(rng, n):
    k = int(rng.integers(1, n))
    out = np.zeros((n, n), dtype=np.complex128)
    for _ in range(k):
        u = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        out += np.outer(u, v.conj())
    return out / np.sqrt(2.0 * n)

_BUILDERS = {
    "ginibre": _ginibre,
    "haar_unitary": _haar_unitary,
    "hermitian_psd": _hermitian_psd,
    "normal": _normal,
    "nilpotent_shift": _nilpotent_shift,
    "rank_deficient": _rank_deficient,
}


def random_scale(rng) -> complex:
    """Random complex scalar with log-uniform modulus in [1e-3, 1e3]."""
    modulus = 10.0 ** rng.uniform(-3.0, 3.0)
    phase = rng.uniform(0.0, 2.0 * np.pi)
    return modulus * complex(np.cos(phase), np.sin(phase))


def generate(ensemble: MatrixEnsemble) -> np.ndarray:
    """Draw the matrix specified by the ensemble, deterministically in seed."""
    if ensemble.kind not in KINDS:
        raise InvalidInputError(f"unknown ensemble kind '{ensemble.kind}'")
    n = int(ensemble.dim)
    if not DIM_MIN <= n <= DIM_MAX:
        raise InvalidInputError(
            f"ensemble dim must be in [{DIM_MIN}, {DIM_MAX}], got {ensemble.dim}"
        )
    rng = _rng(ensemble.seed)
    if ensemble.kind == "scaled":
        if ensemble.base_kind not in _BUILDERS:
            raise InvalidInputError(f"unknown base kind '{ensemble.base_kind}'")
        base = _BUILDERS[ensemble.base_kind](rng, n)
        return base * random_scale(rng)
    return _BUILDERS[ensemble.kind](rng, n)


def haar_unit_vector(rng: np.random.Generator, n: int) -> np.ndarray:
    """Haar-random unit vector as an n x 1 matrix."""
    z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return (z / np.linalg.norm(z)).reshape(-1, 1)
