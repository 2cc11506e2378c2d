import numpy as np
import pytest

from aluthge.linalg import InvalidInputError, frobenius, operator_norm
from aluthge.pairs import builtin_custom_pairs, make_power_pair
from aluthge.polar import abs_value, matrix_function, polar_decompose, range_projection

from conftest import random_complex, random_psd, random_rank_deficient

SHIFT = np.array([[0, 1], [0, 0]], dtype=complex)


class TestAbsValue:
    def test_shift(self):
        np.testing.assert_allclose(abs_value(SHIFT), np.diag([0.0, 1.0]), atol=1e-14)

    def test_unimodular_scalar(self):
        u = np.exp(0.7j)
        np.testing.assert_allclose(abs_value(u * np.eye(3)), np.eye(3), atol=1e-14)

    def test_jordan_block_spectrum(self):
        # |J| has the singular values of J as eigenvalues
        j = np.array([[1, 1], [0, 1]], dtype=complex)
        expected = np.sort(np.linalg.svd(j, compute_uv=False))
        got = np.linalg.eigvalsh(abs_value(j))
        np.testing.assert_allclose(got, expected, atol=1e-12)

    def test_agrees_with_polar_positive_factor(self, rng):
        for _ in range(40):
            n = int(rng.integers(2, 9))
            a = random_rank_deficient(rng, n) if rng.random() < 0.5 else random_complex(rng, n)
            d = operator_norm(abs_value(a) - polar_decompose(a).positive)
            assert d <= 1e-9


class TestPolarDecompose:
    def test_shift_factors(self):
        f = polar_decompose(SHIFT)
        np.testing.assert_allclose(f.isometry, SHIFT, atol=1e-14)
        np.testing.assert_allclose(f.positive, np.diag([0.0, 1.0]), atol=1e-14)
        assert f.numerical_rank == 1

    def test_scalar(self):
        f = polar_decompose(2.0 * np.eye(3))
        np.testing.assert_allclose(f.isometry, np.eye(3), atol=1e-13)
        np.testing.assert_allclose(f.positive, 2.0 * np.eye(3), atol=1e-13)
        assert f.numerical_rank == 3

    def test_zero_matrix(self):
        f = polar_decompose(np.zeros((2, 2)))
        assert f.numerical_rank == 0
        assert np.all(f.isometry == 0) and np.all(f.positive == 0)

    def test_invertible_gives_unitary_factor(self, rng):
        for _ in range(20):
            n = int(rng.integers(2, 9))
            a = random_complex(rng, n) + 2.0 * np.eye(n)
            f = polar_decompose(a)
            u = f.isometry
            assert np.linalg.norm(u.conj().T @ u - np.eye(n)) <= 1e-10
            assert frobenius(u @ f.positive - a) <= 1e-10 * (1 + frobenius(a))

    def test_contract_on_rank_deficient(self, rng):
        for _ in range(40):
            n = int(rng.integers(2, 9))
            a = random_rank_deficient(rng, n)
            f = polar_decompose(a)
            u, p = f.isometry, f.positive
            assert frobenius(u @ p - a) <= 1e-10 * (1 + frobenius(a))
            assert frobenius(u @ u.conj().T @ u - u) <= 1e-10
            assert np.linalg.eigvalsh(p)[0] >= -1e-10 * max(operator_norm(p), 1e-300)
            values, vectors = np.linalg.eigh(p)
            for k in np.nonzero(values < f.rank_tolerance)[0]:
                assert np.linalg.norm(u @ vectors[:, k]) <= 1e-8

    def test_rank_tolerance_override(self, rng):
        a = np.diag([1.0, 1e-5]).astype(complex)
        assert polar_decompose(a).numerical_rank == 2
        assert polar_decompose(a, rank_tolerance=1e-4).numerical_rank == 1

    def test_rejects_rectangular(self, rng):
        with pytest.raises(InvalidInputError):
            polar_decompose(random_complex(rng, 2, 3))


class TestMatrixFunction:
    def test_sqrt_diagonal(self):
        out = matrix_function(np.diag([0.0, 4.0]), np.sqrt)
        np.testing.assert_allclose(out, np.diag([0.0, 2.0]), atol=1e-14)

    def test_identity_map(self, rng):
        h = random_psd(rng, 4)
        np.testing.assert_allclose(matrix_function(h, lambda x: x), h, atol=1e-10)

    def test_square_against_multiplication(self):
        h = np.array([[2.0, 1.0], [1.0, 2.0]], dtype=complex)
        expected = h @ h  # direct multiplication oracle
        np.testing.assert_array_equal(expected, np.array([[5, 4], [4, 5]]))
        np.testing.assert_allclose(matrix_function(h, lambda x: x**2), expected, atol=1e-12)

    def test_rejects_indefinite(self):
        with pytest.raises(InvalidInputError, match="not PSD"):
            matrix_function(np.diag([1.0, -1.0]), np.sqrt)

    def test_rejects_non_hermitian(self):
        with pytest.raises(InvalidInputError, match="not Hermitian"):
            matrix_function(SHIFT, np.sqrt)

    def test_multiplicativity_for_commuting_functions(self, rng):
        h = random_psd(rng, 5)
        fg = matrix_function(h, np.sqrt) @ matrix_function(h, lambda x: x**0.25)
        direct = matrix_function(h, lambda x: x**0.75)
        assert operator_norm(fg - direct) <= 1e-9


class TestPairLifting:
    @pytest.mark.parametrize("t", [0.0, 0.25, 0.5, 1.0])
    def test_power_pairs_recover_input(self, rng, t):
        pair = make_power_pair(t)
        h = random_psd(rng, 4)
        lifted = matrix_function(h, pair.f) @ matrix_function(h, pair.g)
        assert operator_norm(lifted - h) <= 1e-8 * (1 + operator_norm(h))

    def test_custom_pairs_recover_input(self, rng):
        for pair in builtin_custom_pairs():
            h = random_psd(rng, 5)
            lifted = matrix_function(h, pair.f) @ matrix_function(h, pair.g)
            assert operator_norm(lifted - h) <= 1e-8 * (1 + operator_norm(h))


def test_range_projection_spans_range(rng):
    a = random_rank_deficient(rng, 5)
    f = polar_decompose(a)
    proj = range_projection(f)
    # projects onto range of |A|: P proj = P and proj is idempotent Hermitian
    assert operator_norm(f.positive @ proj - f.positive) <= 1e-9
    assert operator_norm(proj @ proj - proj) <= 1e-12
    assert np.isclose(np.trace(proj).real, f.numerical_rank, atol=1e-9)
