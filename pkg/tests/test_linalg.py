import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aluthge.linalg import (
    InvalidInputError,
    adjoint,
    as_matrix,
    herm_eigen,
    multiply,
    operator_norm,
    spectral_radius,
    svd,
)

from conftest import random_complex, random_unitary

GOLDEN = (1.0 + np.sqrt(5.0)) / 2.0


def naive_multiply(a, b):
    """Hand-multiplication oracle."""
    n, k = a.shape
    _, m = b.shape
    out = np.zeros((n, m), dtype=complex)
    for i in range(n):
        for j in range(m):
            for p in range(k):
                out[i, j] += a[i, p] * b[p, j]
    return out


class TestMultiply:
    def test_identity(self, rng):
        a = random_complex(rng, 3)
        assert np.allclose(multiply(np.eye(3), a), a, atol=0)

    def test_nilpotent_square_is_zero(self):
        s = np.array([[0, 1], [0, 0]], dtype=complex)
        assert np.all(multiply(s, s) == 0)

    def test_hand_oracle(self):
        j = np.array([[1, 1], [0, 1]], dtype=complex)
        expected = naive_multiply(j, j)
        np.testing.assert_array_equal(expected, np.array([[1, 2], [0, 1]]))
        np.testing.assert_array_equal(multiply(j, j), expected)

    def test_random_against_oracle(self, rng):
        a = random_complex(rng, 3, 4)
        b = random_complex(rng, 4, 2)
        assert np.allclose(multiply(a, b), naive_multiply(a, b), atol=1e-13)

    def test_dimension_mismatch(self, rng):
        with pytest.raises(InvalidInputError):
            multiply(random_complex(rng, 2, 3), random_complex(rng, 2, 3))

    def test_rejects_nan(self):
        with pytest.raises(InvalidInputError):
            as_matrix([[np.nan, 0], [0, 0]])


class TestAdjoint:
    def test_shift(self):
        np.testing.assert_array_equal(
            adjoint([[0, 1], [0, 0]]), np.array([[0, 0], [1, 0]])
        )

    def test_scalar_i(self):
        np.testing.assert_array_equal(adjoint(1j * np.eye(2)), -1j * np.eye(2))

    def test_involution(self, rng):
        a = random_complex(rng, 4, 2)
        np.testing.assert_array_equal(adjoint(adjoint(a)), a)


class TestHermEigen:
    def test_diagonal(self):
        eig = herm_eigen(np.diag([3.0, 1.0]))
        np.testing.assert_allclose(eig.values, [1.0, 3.0], atol=1e-14)

    def test_char_poly_oracle(self):
        # eigenvalues of [[2,1],[1,2]] from its characteristic polynomial
        roots = np.sort(np.roots([1.0, -4.0, 3.0]))
        np.testing.assert_allclose(roots, [1.0, 3.0], atol=1e-12)
        eig = herm_eigen(np.array([[2.0, 1.0], [1.0, 2.0]], dtype=complex))
        np.testing.assert_allclose(eig.values, roots, atol=1e-12)

    def test_zero_matrix(self):
        eig = herm_eigen(np.zeros((3, 3)))
        np.testing.assert_array_equal(eig.values, np.zeros(3))

    def test_reconstruction_and_unitarity(self, rng):
        a = random_complex(rng, 6)
        h = a + a.conj().T
        eig = herm_eigen(h)
        q = eig.vectors
        recon = (q * eig.values) @ q.conj().T
        assert np.linalg.norm(recon - h) <= 1e-10 * (1 + np.linalg.norm(h))
        assert np.linalg.norm(q.conj().T @ q - np.eye(6)) <= 1e-10
        assert np.all(np.diff(eig.values) >= 0)

    def test_rejects_non_hermitian(self, rng):
        with pytest.raises(InvalidInputError):
            herm_eigen(np.array([[0, 1], [0, 0]], dtype=complex))

    def test_recovers_planted_spectrum(self, rng):
        for _ in range(20):
            n = int(rng.integers(2, 9))
            q = random_unitary(rng, n)
            d = np.sort(rng.standard_normal(n))
            eig = herm_eigen((q * d) @ q.conj().T)
            np.testing.assert_allclose(eig.values, d, atol=1e-9)


class TestSvd:
    def test_rank_one(self):
        dec = svd(np.array([[0, 2], [0, 0]], dtype=complex))
        np.testing.assert_allclose(dec.singulars, [2.0, 0.0], atol=1e-14)

    def test_unitary_has_unit_singulars(self, rng):
        u = random_unitary(rng, 5)
        np.testing.assert_allclose(svd(u).singulars, np.ones(5), atol=1e-12)

    def test_jordan_block_oracle(self):
        j = np.array([[1, 1], [0, 1]], dtype=complex)
        # singular values from the eigenvalues of J*J
        expected = np.sqrt(np.sort(np.linalg.eigvalsh(j.conj().T @ j))[::-1])
        np.testing.assert_allclose(expected, [GOLDEN, GOLDEN - 1.0], atol=1e-12)
        np.testing.assert_allclose(svd(j).singulars, expected, atol=1e-12)

    def test_reconstruction(self, rng):
        a = random_complex(rng, 4, 4)
        dec = svd(a)
        recon = (dec.left * dec.singulars) @ dec.right.conj().T
        assert np.linalg.norm(recon - a) <= 1e-10 * (1 + np.linalg.norm(a))
        assert np.all(np.diff(dec.singulars) <= 0)
        assert np.all(dec.singulars >= 0)


class TestNorms:
    def test_operator_norm_examples(self):
        assert operator_norm(np.eye(3)) == pytest.approx(1.0, abs=1e-14)
        assert operator_norm([[0, 2], [0, 0]]) == pytest.approx(2.0, abs=1e-14)
        assert operator_norm([[1, 1], [0, 1]]) == pytest.approx(GOLDEN, abs=1e-12)

    def test_spectral_radius_examples(self):
        assert spectral_radius([[0, 1], [0, 0]]) == pytest.approx(0.0, abs=1e-14)
        assert spectral_radius(np.diag([1.0, 1j])) == pytest.approx(1.0, abs=1e-14)
        assert spectral_radius([[1, 1], [0, 1]]) == pytest.approx(1.0, abs=1e-12)

    def test_spectral_radius_rejects_rectangular(self, rng):
        with pytest.raises(InvalidInputError):
            spectral_radius(random_complex(rng, 2, 3))

    def test_norm_of_adjoint(self, rng):
        for _ in range(25):
            a = random_complex(rng, int(rng.integers(2, 9)))
            assert abs(operator_norm(a) - operator_norm(a.conj().T)) <= 1e-10

    def test_submultiplicative(self, rng):
        for _ in range(25):
            n = int(rng.integers(2, 9))
            a, b = random_complex(rng, n), random_complex(rng, n)
            assert operator_norm(a @ b) <= operator_norm(a) * operator_norm(b) + 1e-10

    def test_spectral_radius_below_norm(self, rng):
        for _ in range(25):
            a = random_complex(rng, int(rng.integers(2, 17)))
            assert spectral_radius(a) <= operator_norm(a) + 1e-10


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 6), st.integers(0, 2**32 - 1))
def test_adjoint_reverses_products(n, seed):
    rng = np.random.default_rng(seed)
    a, b = random_complex(rng, n), random_complex(rng, n)
    assert np.allclose(adjoint(multiply(a, b)), multiply(adjoint(b), adjoint(a)), atol=1e-12)
