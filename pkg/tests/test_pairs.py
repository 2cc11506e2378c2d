import numpy as np
import pytest

from aluthge.linalg import InvalidInputError
from aluthge.pairs import (
    VALIDATION_GRID,
    FunctionPair,
    GaugeFunction,
    builtin_custom_pairs,
    expm1_gauge,
    make_power_gauge,
    make_power_pair,
    parse_gauge_spec,
    parse_pair_spec,
)


class TestPowerPairs:
    def test_half_power(self):
        p = make_power_pair(0.5)
        assert float(p.f(np.asarray(4.0))) == pytest.approx(2.0, abs=1e-14)
        assert float(p.g(np.asarray(4.0))) == pytest.approx(2.0, abs=1e-14)
        assert p.monotone and p.kind == "power" and p.label == "power:0.5"

    def test_duggal_endpoint(self):
        p = make_power_pair(1.0)
        x = np.array([0.0, 0.5, 2.0])
        np.testing.assert_allclose(p.f(x), x)
        np.testing.assert_array_equal(p.g(x), [0.0, 1.0, 1.0])  # 0**0 := 0

    def test_other_endpoint(self):
        p = make_power_pair(0.0)
        x = np.array([0.0, 1e-9, 3.0])
        np.testing.assert_array_equal(p.f(x), [0.0, 1.0, 1.0])
        np.testing.assert_allclose(p.g(x), x)

    def test_product_identity(self):
        p = make_power_pair(0.3)
        x = np.asarray(8.0)
        assert float(p.f(x) * p.g(x)) == pytest.approx(8.0, abs=1e-12)

    @pytest.mark.parametrize("t", [-0.1, 1.5, np.nan])
    def test_domain_rejected(self, t):
        with pytest.raises(InvalidInputError):
            make_power_pair(t)


class TestBuiltinPairs:
    def test_listing(self):
        labels = [p.label for p in builtin_custom_pairs()]
        assert labels == ["rational", "exp"]

    def test_rational_values(self):
        p = parse_pair_spec("rational")
        assert float(p.f(np.asarray(2.0))) == pytest.approx(2.0 / 3.0, abs=1e-15)
        assert float(p.g(np.asarray(2.0))) == pytest.approx(3.0, abs=1e-15)
        assert p.monotone

    def test_exp_values(self):
        p = parse_pair_spec("exp")
        assert float(p.f(np.asarray(0.0))) == 0.0
        assert float(p.g(np.asarray(0.0))) == 1.0
        assert not p.monotone

    def test_rational_monotone_on_grid(self):
        p = parse_pair_spec("rational")
        fx = p.f(VALIDATION_GRID)
        gx = p.g(VALIDATION_GRID)
        assert np.all(np.diff(fx) >= -1e-12)
        assert np.all(np.diff(gx) >= -1e-12)


class TestPairValidation:
    def test_product_violation_rejected(self):
        with pytest.raises(InvalidInputError, match="deviates"):
            FunctionPair("bogus", lambda x: np.asarray(x), lambda x: np.asarray(x), False)

    def test_negativity_rejected(self):
        with pytest.raises(InvalidInputError, match="non-negative"):
            FunctionPair("neg", lambda x: -np.ones_like(x), lambda x: -np.asarray(x), False)

    def test_false_monotone_flag_rejected(self):
        with pytest.raises(InvalidInputError, match="monotone"):
            FunctionPair(
                "expflag",
                lambda x: np.asarray(x) * np.exp(-np.asarray(x)),
                lambda x: np.exp(np.asarray(x)),
                True,
            )


class TestGauges:
    def test_power_gauge(self):
        g = make_power_gauge(2)
        assert g.scalar(3.0) == pytest.approx(9.0, abs=1e-14)
        assert g.scalar(0.0) == 0.0

    def test_expm1(self):
        g = expm1_gauge()
        assert g.scalar(0.0) == 0.0
        assert g.scalar(1.0) == pytest.approx(np.expm1(1.0), abs=1e-15)

    def test_power_below_one_rejected(self):
        with pytest.raises(InvalidInputError):
            make_power_gauge(0.5)

    def test_concave_gauge_rejected(self):
        with pytest.raises(InvalidInputError, match="convexity"):
            GaugeFunction("sqrt", lambda x: np.sqrt(np.asarray(x)))

    def test_decreasing_gauge_rejected(self):
        with pytest.raises(InvalidInputError, match="non-decreasing"):
            GaugeFunction("drop", lambda x: 1.0 / (1.0 + np.asarray(x)))


class TestSpecParsing:
    @pytest.mark.parametrize(
        "spec,label",
        [("power:0.5", "power:0.5"), ("rational", "rational"), ("exp", "exp")],
    )
    def test_pair_specs(self, spec, label):
        assert parse_pair_spec(spec).label == label

    @pytest.mark.parametrize(
        "spec,label",
        [
            ("gauge:power:2", "power:2"),
            ("power:3", "power:3"),
            ("gauge:expm1", "expm1"),
            ("expm1", "expm1"),
        ],
    )
    def test_gauge_specs(self, spec, label):
        assert parse_gauge_spec(spec).label == label

    @pytest.mark.parametrize("spec", ["power", "power:x", "unknown", ""])
    def test_bad_pair_specs(self, spec):
        with pytest.raises(InvalidInputError):
            parse_pair_spec(spec)

    @pytest.mark.parametrize("spec", ["gauge:unknown", "gauge:power:0"])
    def test_bad_gauge_specs(self, spec):
        with pytest.raises(InvalidInputError):
            parse_gauge_spec(spec)


def test_validation_grid_contents():
    g = VALIDATION_GRID
    assert g[0] == 0.0
    for v in (1e-6, 1e-3, 0.1, 10.0, 100.0, 1000.0):
        assert v in g
    assert np.all(np.diff(g) > 0)
