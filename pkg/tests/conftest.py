"""Shared helpers for the test suite."""

import numpy as np
import pytest


def random_complex(rng, n, m=None):
    m = n if m is None else m
    return (rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))) / np.sqrt(2.0)


def random_unitary(rng, n):
    q, r = np.linalg.qr(random_complex(rng, n))
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_psd(rng, n):
    b = random_complex(rng, n)
    return b.conj().T @ b


def random_normal_invertible(rng, n, min_modulus=0.3):
    q = random_unitary(rng, n)
    d = random_complex(rng, n, 1).reshape(-1)
    d = (min_modulus + np.abs(d)) * np.exp(1j * np.angle(d))
    return (q * d) @ q.conj().T


def random_rank_deficient(rng, n):
    k = int(rng.integers(1, n))
    b = random_complex(rng, n, k)
    c = random_complex(rng, k, n)
    return b @ c


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
