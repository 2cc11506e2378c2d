import numpy as np
import pytest

from aluthge.linalg import InvalidInputError, operator_norm, spectral_radius
from aluthge.radii import (
    check_power_inequality,
    numerical_radius_ellipse2x2,
    numerical_radius_sampling,
    numerical_radius_sweep,
    offdiag_radius_sweep,
)
from aluthge.transforms import offdiag_embed

from conftest import random_complex, random_psd

SHIFT = np.array([[0, 1], [0, 0]], dtype=complex)
JORDAN = np.array([[1, 1], [0, 1]], dtype=complex)


def fine_grid_radius(a, points=200_000):
    """Brute-force oracle: dense angle grid, no refinement."""
    thetas = np.linspace(0.0, 2.0 * np.pi, points, endpoint=False)
    ph = np.exp(1j * thetas)[:, None, None]
    h = 0.5 * (ph * a + np.conj(ph) * a.conj().T)
    return float(np.max(np.linalg.eigvalsh(h)[:, -1]))


class TestSweep:
    def test_identity(self):
        est = numerical_radius_sweep(np.eye(3))
        assert est.value == pytest.approx(1.0, abs=1e-12)

    def test_shift_against_oracles(self):
        est = numerical_radius_sweep(SHIFT)
        assert est.value == pytest.approx(0.5, abs=1e-12)
        assert est.value == pytest.approx(fine_grid_radius(SHIFT), abs=1e-9)

    def test_jordan_block(self):
        # numerical range is the disk of radius 1/2 centered at 1
        est = numerical_radius_sweep(JORDAN)
        assert est.value == pytest.approx(1.5, abs=1e-12)

    def test_witness_fields(self, rng):
        a = random_complex(rng, 4)
        est = numerical_radius_sweep(a)
        assert 0.0 <= est.theta_star < 2.0 * np.pi
        assert est.method == "sweep" and est.grid_points == 720
        assert est.lower_bound <= est.value + 1e-12

    def test_small_grid_rejected(self):
        with pytest.raises(InvalidInputError):
            numerical_radius_sweep(SHIFT, grid=32)

    def test_non_square_rejected(self, rng):
        with pytest.raises(InvalidInputError):
            numerical_radius_sweep(random_complex(rng, 2, 3))

    def test_norm_sandwich(self, rng):
        for _ in range(30):
            n = int(rng.integers(2, 17))
            a = random_complex(rng, n)
            w = numerical_radius_sweep(a).value
            nrm = operator_norm(a)
            assert 0.5 * nrm - 1e-10 <= w <= nrm + 1e-10
            assert spectral_radius(a) <= w + 1e-10

    def test_scaling_equivariance(self, rng):
        a = random_complex(rng, 4)
        w = numerical_radius_sweep(a).value
        for _ in range(5):
            c = complex(rng.standard_normal(), rng.standard_normal())
            wc = numerical_radius_sweep(c * a).value
            assert wc == pytest.approx(abs(c) * w, abs=1e-10 * (1 + abs(c)))

    def test_hermitian_radius_is_norm(self, rng):
        h = random_psd(rng, 5)
        assert numerical_radius_sweep(h).value == pytest.approx(
            operator_norm(h), abs=1e-10
        )


class TestEllipse:
    def test_disk(self):
        est = numerical_radius_ellipse2x2(np.array([[0, 2], [0, 0]], dtype=complex))
        assert est.value == pytest.approx(1.0, abs=1e-12)
        assert est.method == "ellipse2x2"

    def test_normal_degenerates_to_segment(self):
        est = numerical_radius_ellipse2x2(np.diag([3.0 + 0j, -1.0 + 2j]))
        assert est.value == pytest.approx(3.0, abs=1e-12)

    def test_jordan_block(self):
        est = numerical_radius_ellipse2x2(JORDAN)
        assert est.value == pytest.approx(1.5, abs=1e-12)

    def test_scalar_matrix(self):
        est = numerical_radius_ellipse2x2((2.0 - 1.0j) * np.eye(2))
        assert est.value == pytest.approx(abs(2.0 - 1.0j), abs=1e-12)

    def test_wrong_size_rejected(self):
        with pytest.raises(InvalidInputError):
            numerical_radius_ellipse2x2(np.eye(3))

    def test_oracle_agreement(self, rng):
        for _ in range(100):
            a = random_complex(rng, 2) * (0.5 + 2.0 * rng.random())
            sweep = numerical_radius_sweep(a).value
            ellipse = numerical_radius_ellipse2x2(a).value
            assert abs(sweep - ellipse) <= 1e-9


class TestSampling:
    def test_identity_exact(self):
        est = numerical_radius_sampling(np.eye(3), samples=100, seed=1)
        assert est.value == pytest.approx(1.0, abs=1e-13)

    def test_zero_matrix(self):
        assert numerical_radius_sampling(np.zeros((2, 2)), samples=10, seed=0).value == 0.0

    def test_shift_lower_bound(self):
        est = numerical_radius_sampling(SHIFT, samples=100_000, seed=7)
        sweep = numerical_radius_sweep(SHIFT).value
        assert est.value <= sweep + 1e-10
        assert est.value >= 0.5 - 1e-3

    def test_always_below_sweep(self, rng):
        for _ in range(10):
            a = random_complex(rng, int(rng.integers(2, 6)))
            samp = numerical_radius_sampling(a, samples=2000, seed=3).value
            assert samp <= numerical_radius_sweep(a).value + 1e-10

    def test_bad_samples_rejected(self):
        with pytest.raises(InvalidInputError):
            numerical_radius_sampling(SHIFT, samples=0, seed=0)

    def test_deterministic_in_seed(self, rng):
        a = random_complex(rng, 3)
        v1 = numerical_radius_sampling(a, samples=500, seed=42).value
        v2 = numerical_radius_sampling(a, samples=500, seed=42).value
        assert v1 == v2


class TestOffdiagSweep:
    def test_matches_dense_sweep(self, rng):
        for _ in range(15):
            n = int(rng.integers(2, 6))
            a, b = random_complex(rng, n), random_complex(rng, n)
            structured = offdiag_radius_sweep(a, b).value
            dense = numerical_radius_sweep(offdiag_embed(a, b)).value
            assert abs(structured - dense) <= 1e-12 * (1 + dense)

    def test_half_norm_case(self, rng):
        a = random_complex(rng, 3)
        est = offdiag_radius_sweep(a, np.zeros_like(a))
        assert est.value == pytest.approx(0.5 * operator_norm(a), abs=1e-10)


class TestPowerInequality:
    def test_identity_matrix(self):
        rep = check_power_inequality(np.eye(2), 5)
        assert rep.passed and rep.lhs == pytest.approx(1.0, abs=1e-12)
        assert rep.slack == pytest.approx(0.0, abs=1e-10)

    def test_nilpotent(self):
        rep = check_power_inequality(SHIFT, 2)
        assert rep.passed
        assert rep.lhs == pytest.approx(0.0, abs=1e-12)
        assert rep.rhs == pytest.approx(0.25, abs=1e-10)

    def test_random_matrices(self, rng):
        for _ in range(10):
            a = random_complex(rng, 4)
            for n in (2, 3):
                assert check_power_inequality(a, n).passed

    def test_bad_power_rejected(self):
        with pytest.raises(InvalidInputError):
            check_power_inequality(SHIFT, 0)
