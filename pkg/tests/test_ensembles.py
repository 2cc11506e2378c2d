import numpy as np
import pytest

from aluthge.ensembles import KINDS, MatrixEnsemble, generate, haar_unit_vector
from aluthge.linalg import InvalidInputError, operator_norm


class TestDeterminism:
    @pytest.mark.parametrize("kind", KINDS)
    def test_same_spec_same_matrix(self, kind):
        a = generate(MatrixEnsemble(kind=kind, dim=3, seed=7))
        b = generate(MatrixEnsemble(kind=kind, dim=3, seed=7))
        assert np.array_equal(a, b)

    def test_different_seeds_differ(self):
        a = generate(MatrixEnsemble(kind="ginibre", dim=3, seed=1))
        b = generate(MatrixEnsemble(kind="ginibre", dim=3, seed=2))
        assert not np.array_equal(a, b)


class TestDefiningProperties:
    def test_haar_unitary(self):
        u = generate(MatrixEnsemble(kind="haar_unitary", dim=5, seed=1))
        assert operator_norm(u.conj().T @ u - np.eye(5)) <= 1e-10

    def test_hermitian_psd(self):
        h = generate(MatrixEnsemble(kind="hermitian_psd", dim=6, seed=3))
        assert operator_norm(h - h.conj().T) <= 1e-10
        assert np.linalg.eigvalsh(h)[0] >= -1e-10

    def test_normal(self):
        a = generate(MatrixEnsemble(kind="normal", dim=5, seed=9))
        comm = a @ a.conj().T - a.conj().T @ a
        assert operator_norm(comm) <= 1e-10 * max(1.0, operator_norm(a) ** 2)

    def test_nilpotent_shift_structure(self):
        s = generate(MatrixEnsemble(kind="nilpotent_shift", dim=4, seed=123))
        np.testing.assert_array_equal(s, np.diag(np.ones(3), k=1))
        # same matrix for any seed
        np.testing.assert_array_equal(
            s, generate(MatrixEnsemble(kind="nilpotent_shift", dim=4, seed=0))
        )

    def test_rank_deficient(self):
        for seed in range(5):
            a = generate(MatrixEnsemble(kind="rank_deficient", dim=5, seed=seed))
            s = np.linalg.svd(a, compute_uv=False)
            assert s[-1] <= 1e-10 * s[0]

    def test_scaled_modulus_range(self):
        for seed in range(20):
            base = generate(MatrixEnsemble(kind="ginibre", dim=3, seed=seed))
            scaled = generate(MatrixEnsemble(kind="scaled", dim=3, seed=seed))
            ratio = operator_norm(scaled) / operator_norm(base)
            assert 1e-3 / 1.0001 <= ratio <= 1e3 * 1.0001


class TestValidation:
    @pytest.mark.parametrize("dim", [0, 1, 17])
    def test_dim_range(self, dim):
        with pytest.raises(InvalidInputError):
            generate(MatrixEnsemble(kind="ginibre", dim=dim, seed=0))

    def test_unknown_kind(self):
        with pytest.raises(InvalidInputError):
            generate(MatrixEnsemble(kind="wishart", dim=3, seed=0))

    def test_unknown_base_kind(self):
        with pytest.raises(InvalidInputError):
            generate(MatrixEnsemble(kind="scaled", dim=3, seed=0, base_kind="nope"))


def test_haar_unit_vector():
    rng = np.random.default_rng(4)
    v = haar_unit_vector(rng, 5)
    assert v.shape == (5, 1)
    assert np.linalg.norm(v) == pytest.approx(1.0, abs=1e-12)
