"""The C^2 state transform that linearizes power-law growth.

For exponent ``alpha`` in (0, 1) the transform is

    f(x) = 0                          for x <= 0,
    f(x) = x**(1-alpha) / (1-alpha)   for x >= 1,

joined on (0, 1) by integrating a bridge derivative g so that f is twice
continuously differentiable on all of R, nondecreasing, and dominated by
``x**(1-alpha)/(1-alpha)`` on (0, 1).  Applying f to a state with drift
``~ A x**alpha`` yields a process whose drift tends to the constant A, which
is what the growth diagnostics exploit.

Bridge construction.  On [0, 1] take

    g(y) = m(y) + (kappa/2) * (1 - cos(2 pi y)),
    m(y) = y**2 * (3 + alpha - (2 + alpha) * y),

where m matches the endpoint data m(0)=m'(0)=0, m(1)=1, m'(1)=-alpha, and the
cosine bump (vanishing with its derivative at both ends) carries the excess
mass: kappa = 2*(1/(1-alpha) - (6+alpha)/12) makes the integral of g over
[0, 1] exactly 1/(1-alpha), so the power form continues without an offset.
Both g >= 0 and the domination of f on (0, 1) hold for every alpha in (0, 1);
the antiderivative is closed form, so no numerics enter the evaluation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING, Callable

import numpy as np

if TYPE_CHECKING:
    from .coefficients import CoefficientFamily
    from .noise import LevyMeasure

__all__ = [
    "SmoothTransform",
    "TransformedCoefficients",
    "transformed_drift",
    "transformed_diffusion",
    "transformed_jump",
    "transform_at",
]

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SmoothTransform:
    """The transform f with exponent ``alpha`` in (0, 1), plus f' and f''."""

    alpha: float

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")

    @cached_property
    def kappa(self) -> float:
        return 2.0 * (1.0 / (1.0 - self.alpha) - (6.0 + self.alpha) / 12.0)

    def _bridge(self, y: np.ndarray) -> np.ndarray:
        a, k = self.alpha, self.kappa
        return y**2 * (3.0 + a - (2.0 + a) * y) + 0.5 * k * (1.0 - np.cos(_TWO_PI * y))

    def _bridge_prime(self, y: np.ndarray) -> np.ndarray:
        a, k = self.alpha, self.kappa
        return 2.0 * (3.0 + a) * y - 3.0 * (2.0 + a) * y**2 + k * math.pi * np.sin(
            _TWO_PI * y
        )

    def _bridge_integral(self, y: np.ndarray) -> np.ndarray:
        a, k = self.alpha, self.kappa
        return (
            (3.0 + a) / 3.0 * y**3
            - (2.0 + a) / 4.0 * y**4
            + 0.5 * k * (y - np.sin(_TWO_PI * y) / _TWO_PI)
        )

    def _piecewise(self, x, left, bridge_fn, right_fn):
        x = np.asarray(x, dtype=float)
        scalar = x.ndim == 0
        x = np.atleast_1d(x)
        out = np.full(x.shape, left, dtype=float)
        mid = (x > 0.0) & (x < 1.0)
        out[mid] = bridge_fn(x[mid])
        hi = x >= 1.0
        out[hi] = right_fn(x[hi])
        return float(out[0]) if scalar else out

    def value(self, x):
        """f(x); exactly ``x**(1-alpha)/(1-alpha)`` for x >= 1 and 0 for x <= 0."""
        a = self.alpha
        return self._piecewise(
            x, 0.0, self._bridge_integral, lambda z: z ** (1.0 - a) / (1.0 - a)
        )

    def prime(self, x):
        """f'(x); ``x**(-alpha)`` for x >= 1, the bridge derivative on (0, 1)."""
        a = self.alpha
        return self._piecewise(x, 0.0, self._bridge, lambda z: z ** (-a))

    def second(self, x):
        """f''(x); ``-alpha * x**(-alpha-1)`` for x >= 1."""
        a = self.alpha
        return self._piecewise(
            x, 0.0, self._bridge_prime, lambda z: -a * z ** (-a - 1.0)
        )

    def inverse(self, y):
        """Inverse of the power branch: maps f(x) back to x for x >= 1."""
        a = self.alpha
        return ((1.0 - a) * np.asarray(y, dtype=float)) ** (1.0 / (1.0 - a))

    __call__ = value


@dataclass(frozen=True)
class TransformedCoefficients:
    """Coefficients of the transformed process at one state value.

    ``drift_parts`` splits the transformed drift into the first-order term,
    the second-order (diffusion curvature) term, and the jump compensator
    integral; ``diffusion`` is b*f' and ``jump(u)`` the transformed mark map.
    """

    drift_parts: tuple[float, float, float]
    diffusion: float
    jump: Callable[[float], float]

    @property
    def drift(self) -> float:
        return sum(self.drift_parts)


def transformed_drift(
    x: float,
    drift: "CoefficientFamily",
    diffusion: "CoefficientFamily | None",
    jump_coeff: "CoefficientFamily | None",
    measure: "LevyMeasure | None",
    transform: SmoothTransform,
) -> tuple[float, float, float]:
    """The three addends of the transformed drift at state ``x``.

    First-order: a(x) f'(x).  Second-order: b(x)^2 f''(x) / 2.  Third: the
    integral of f(x + c(x)u) - f(x) - c(x) u f'(x) against the jump measure,
    evaluated by the quadrature oracle.  Missing diffusion/jump inputs
    contribute zero.
    """
    from .oracles import compensator_integral

    a1 = float(drift.evaluate(x)) * transform.prime(x)
    a2 = 0.0
    if diffusion is not None:
        a2 = 0.5 * float(diffusion.evaluate(x)) ** 2 * transform.second(x)
    a3 = 0.0
    if jump_coeff is not None and measure is not None:
        a3 = compensator_integral(x, transform, jump_coeff, measure)
    return (a1, a2, a3)


def transformed_diffusion(
    x: float, diffusion: "CoefficientFamily", transform: SmoothTransform
) -> float:
    """b(x) * f'(x)."""
    return float(diffusion.evaluate(x)) * transform.prime(x)


def transformed_jump(
    x: float, jump_coeff: "CoefficientFamily", transform: SmoothTransform, u: float
) -> float:
    """f(x + c(x) u) - f(x)."""
    c = float(jump_coeff.evaluate(x))
    return transform.value(x + c * u) - transform.value(x)


def transform_at(
    x: float,
    drift: "CoefficientFamily",
    diffusion: "CoefficientFamily | None",
    jump_coeff: "CoefficientFamily | None",
    measure: "LevyMeasure | None",
    transform: SmoothTransform,
) -> TransformedCoefficients:
    """Bundle all transformed coefficients at one state value."""
    parts = transformed_drift(x, drift, diffusion, jump_coeff, measure, transform)
    diff = 0.0 if diffusion is None else transformed_diffusion(x, diffusion, transform)
    if jump_coeff is None:
        jump = lambda u: 0.0
    else:
        jump = lambda u: transformed_jump(x, jump_coeff, transform, u)
    return TransformedCoefficients(drift_parts=parts, diffusion=diff, jump=jump)
