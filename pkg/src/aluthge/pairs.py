"""Scalar function pairs and gauge functions.

A :class:`FunctionPair` holds non-negative functions ``(f, g)`` on [0, inf)
with ``f(x) * g(x) == x``; applied to the positive polar factor through the
functional calculus they generalize the Aluthge transform.  A
:class:`GaugeFunction` is a non-negative, non-decreasing, convex scalar map
used to lift radius bounds through powers and similar growth functions.

Both kinds are validated numerically on a fixed grid at construction time,
since custom callables are opaque.  Callables must be numpy-vectorized
(array in, array out).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .linalg import InvalidInputError

#: Grid on which pair/gauge defining properties are validated.
VALIDATION_GRID = np.unique(
    np.concatenate(([0.0, 1e-6, 1e-3], 0.1 * np.arange(101), [1e2, 1e3]))
)

_PRODUCT_RTOL = 1e-10
_MONOTONE_SLACK = 1e-12
_CONVEXITY_SLACK = 1e-10


def zero_preserving_power(exponent: float) -> Callable[[np.ndarray], np.ndarray]:
    """x ** exponent with the 0**0 := 0 convention, vectorized."""
    p = float(exponent)

    def fn(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        return np.where(x > 0.0, np.power(x, p), 0.0)

    return fn


@dataclass(frozen=True)
class FunctionPair:
    """A factorization f(x) g(x) = x of the identity on [0, inf)."""

    label: str
    f: Callable[[np.ndarray], np.ndarray]
    g: Callable[[np.ndarray], np.ndarray]
    monotone: bool
    kind: str = "custom"
    param: float | None = None

    def __post_init__(self):
        validate_pair(self)


@dataclass(frozen=True)
class GaugeFunction:
    """A non-negative, non-decreasing, convex scalar map on [0, inf)."""

    label: str
    h: Callable[[np.ndarray], np.ndarray]
    kind: str = "custom"
    param: float | None = None

    def __post_init__(self):
        validate_gauge(self)

    def scalar(self, x: float) -> float:
        return float(np.asarray(self.h(np.asarray(float(x)))))


def validate_pair(pair: FunctionPair) -> None:
    x = VALIDATION_GRID
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        fx = np.asarray(pair.f(x), dtype=np.float64)
        gx = np.asarray(pair.g(x), dtype=np.float64)
        if fx.shape != x.shape or gx.shape != x.shape:
            raise InvalidInputError(f"pair '{pair.label}': callables must be vectorized")
        if np.any(fx < 0.0) or np.any(gx < 0.0):
            raise InvalidInputError(f"pair '{pair.label}': f and g must be non-negative")
        product = fx * gx
        # 0 * inf from a factor leaving double range makes the product
        # identity unevaluable at that grid point; such points are excluded
        checkable = np.isfinite(product)
        bad = checkable & (np.abs(product - x) > _PRODUCT_RTOL * (1.0 + x))
        if np.any(bad):
            worst = float(np.max(np.abs(product[bad] - x[bad]) / (1.0 + x[bad])))
            raise InvalidInputError(
                f"pair '{pair.label}': f*g deviates from identity by {worst:.3e}"
            )
        if pair.monotone:
            if np.any(np.diff(fx) < -_MONOTONE_SLACK) or np.any(np.diff(gx) < -_MONOTONE_SLACK):
                raise InvalidInputError(
                    f"pair '{pair.label}': flagged monotone but decreasing on the grid"
                )


def validate_gauge(gauge: GaugeFunction) -> None:
    x = VALIDATION_GRID
    with np.errstate(over="ignore"):
        hx = np.asarray(gauge.h(x), dtype=np.float64)
        if hx.shape != x.shape:
            raise InvalidInputError(f"gauge '{gauge.label}': callable must be vectorized")
        if np.any(np.isnan(hx)) or hx[0] < 0.0 or np.any(hx < 0.0):
            raise InvalidInputError(f"gauge '{gauge.label}': must be non-negative")
        if np.any(np.diff(hx) < -_MONOTONE_SLACK):
            raise InvalidInputError(f"gauge '{gauge.label}': must be non-decreasing")
        xg, yg = np.meshgrid(x, x)
        mid = np.asarray(gauge.h((xg + yg) / 2.0), dtype=np.float64)
        avg = (np.asarray(gauge.h(xg)) + np.asarray(gauge.h(yg))) / 2.0
        if np.any(mid > avg + _CONVEXITY_SLACK):
            raise InvalidInputError(f"gauge '{gauge.label}': fails midpoint convexity")


def make_power_pair(t: float) -> FunctionPair:
    """The pair (x^t, x^(1-t)) for t in [0, 1], with f(0) = g(0) = 0.

    The zero-at-zero convention keeps f(0)g(0) = 0 at the endpoints t = 0
    and t = 1, where one factor would otherwise be the constant 1; the
    endpoint transforms are then well defined on singular matrices.
    """
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise InvalidInputError(f"power pair exponent must be in [0, 1], got {t}")
    return FunctionPair(
        label=f"power:{t:g}",
        f=zero_preserving_power(t),
        g=zero_preserving_power(1.0 - t),
        monotone=True,
        kind="power",
        param=t,
    )


def _rational_f(x):
    x = np.asarray(x, dtype=np.float64)
    return x / (1.0 + x)


def _rational_g(x):
    return 1.0 + np.asarray(x, dtype=np.float64)


def _exp_f(x):
    x = np.asarray(x, dtype=np.float64)
    return x * np.exp(-x)


def _exp_g(x):
    with np.errstate(over="ignore"):
        return np.exp(np.asarray(x, dtype=np.float64))


def rational_pair() -> FunctionPair:
    return FunctionPair(
        label="rational", f=_rational_f, g=_rational_g, monotone=True, kind="custom"
    )


def exp_pair() -> FunctionPair:
    # f(x) = x e^{-x} peaks at x = 1 and then decays, hence monotone=False.
    return FunctionPair(label="exp", f=_exp_f, g=_exp_g, monotone=False, kind="custom")


def builtin_custom_pairs() -> list[FunctionPair]:
    """The shipped non-power pairs."""
    return [rational_pair(), exp_pair()]


def make_power_gauge(r: float) -> GaugeFunction:
    r = float(r)
    if r < 1.0:
        raise InvalidInputError(f"power gauge exponent must be >= 1, got {r}")
    return GaugeFunction(
        label=f"power:{r:g}", h=zero_preserving_power(r), kind="power", param=r
    )


def _expm1(x):
    return np.expm1(np.asarray(x, dtype=np.float64))


def expm1_gauge() -> GaugeFunction:
    return GaugeFunction(label="expm1", h=_expm1, kind="expm1")


def parse_pair_spec(spec: str) -> FunctionPair:
    """Parse pair specs: "power:0.5", "rational", "exp"."""
    spec = spec.strip()
    if spec.startswith("power:"):
        try:
            t = float(spec.split(":", 1)[1])
        except ValueError as exc:
            raise InvalidInputError(f"bad power pair spec '{spec}'") from exc
        return make_power_pair(t)
    if spec == "rational":
        return rational_pair()
    if spec == "exp":
        return exp_pair()
    raise InvalidInputError(f"unknown function pair spec '{spec}'")


def parse_gauge_spec(spec: str) -> GaugeFunction:
    """Parse gauge specs: "gauge:power:2", "gauge:expm1" (prefix optional)."""
    spec = spec.strip()
    if spec.startswith("gauge:"):
        spec = spec[len("gauge:"):]
    if spec.startswith("power:"):
        try:
            r = float(spec.split(":", 1)[1])
        except ValueError as exc:
            raise InvalidInputError(f"bad power gauge spec '{spec}'") from exc
        return make_power_gauge(r)
    if spec == "expm1":
        return expm1_gauge()
    raise InvalidInputError(f"unknown gauge spec '{spec}'")
