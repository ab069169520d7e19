"""Deterministic quadrature oracles and empirical moment-growth scans.

The two jump-measure integrals quantify how the transformed compensator and
the transformed jump variance behave as the state grows: the compensator
integral decays like ``x**-(1+alpha-2*beta)`` and the squared-difference
integral is bounded by a constant times ``x**(2*(beta-alpha))``.  The scans
fit these rates on log grids.  The martingale scan estimates the growth
exponent gamma of E M(t)^2 for simulated centered noise and tracks the decay
of sup |M(s)/s| over shrinking tail windows at dyadic times.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .coefficients import CoefficientFamily
from .engine import PathRecord
from .noise import LevyMeasure
from .transform import SmoothTransform

__all__ = [
    "DecayFitReport",
    "compensator_integral",
    "quadratic_integral",
    "decay_scan",
    "martingale_moment_scan",
    "gaussian_martingale_paths",
]

_TAIL_POINTS = 5


@dataclass
class DecayFitReport:
    """Log-log tail fit of a scan: values on a grid, slope, bound constant.

    ``fitted_exponent`` is the least-squares slope of log|value| against
    log x over the last tail points; ``bound_constant`` is the largest
    ``|value| * x**(-predicted_exponent)`` seen on the grid.  ``degenerate``
    flags all-zero tails where no fit is possible.  Moment scans additionally
    fill the dyadic sup-curve fields.
    """

    x_grid: np.ndarray
    values: np.ndarray
    fitted_exponent: float
    bound_constant: float
    degenerate: bool = False
    predicted_exponent: float | None = None
    dyadic_times: np.ndarray | None = None
    dyadic_sup_mean: np.ndarray | None = None
    dyadic_sup_se: np.ndarray | None = None

    def to_dict(self) -> dict:
        out = {
            "x": np.asarray(self.x_grid).tolist(),
            "value": np.asarray(self.values).tolist(),
            "fitted_exponent": self.fitted_exponent,
            "bound_constant": self.bound_constant,
            "degenerate": self.degenerate,
        }
        if self.predicted_exponent is not None:
            out["predicted_exponent"] = self.predicted_exponent
        if self.dyadic_times is not None:
            out["dyadic_t"] = np.asarray(self.dyadic_times).tolist()
            out["dyadic_sup_mean"] = np.asarray(self.dyadic_sup_mean).tolist()
            out["dyadic_sup_se"] = np.asarray(self.dyadic_sup_se).tolist()
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def compensator_integral(
    x: float,
    transform: SmoothTransform,
    jump_coeff: CoefficientFamily,
    measure: LevyMeasure,
) -> float:
    """Integral of f(x + c(x)u) - f(x) - f'(x) c(x) u against the measure."""
    c = float(jump_coeff.evaluate(x))
    fx = transform.value(x)
    fpx = transform.prime(x)

    def integrand(u):
        u = np.asarray(u, dtype=float)
        return transform.value(x + c * u) - fx - fpx * c * u

    return measure.integrate(integrand)


def quadratic_integral(
    x: float,
    transform: SmoothTransform,
    jump_coeff: CoefficientFamily,
    measure: LevyMeasure,
) -> float:
    """Integral of (f(x + c(x)u) - f(x))**2 against the measure."""
    c = float(jump_coeff.evaluate(x))
    fx = transform.value(x)

    def integrand(u):
        u = np.asarray(u, dtype=float)
        return (transform.value(x + c * u) - fx) ** 2

    return measure.integrate(integrand)


def _tail_fit(x: np.ndarray, values: np.ndarray) -> tuple[float, bool]:
    """Least-squares slope of log|values| vs log x over the tail window."""
    n_tail = max(4, min(_TAIL_POINTS, x.size))
    xt, vt = x[-n_tail:], np.abs(values[-n_tail:])
    if np.any(vt == 0.0):
        return float("nan"), True
    slope = np.polyfit(np.log(xt), np.log(vt), 1)[0]
    return float(slope), False


def decay_scan(
    oracle: Callable[[float], float],
    x_grid: Sequence[float],
    predicted_exponent: float,
) -> DecayFitReport:
    """Evaluate a scalar oracle on a log grid and fit its tail decay rate.

    The grid must be log-spaced in [1, inf) with at least 8 points; the last
    5 feed the slope fit (early points pollute asymptotic rates).  The bound
    constant is the sup of |value| * x**(-predicted_exponent) over the grid.
    """
    x = np.asarray(x_grid, dtype=float)
    if x.size < 8:
        raise ValueError(f"need at least 8 grid points, got {x.size}")
    if x.min() < 1.0:
        raise ValueError("scan grid must lie in [1, inf)")
    if np.any(np.diff(x) <= 0):
        raise ValueError("scan grid must be strictly increasing")
    values = np.array([oracle(float(xi)) for xi in x])
    slope, degenerate = _tail_fit(x, values)
    bound = float(np.max(np.abs(values) * x ** (-predicted_exponent)))
    return DecayFitReport(
        x_grid=x,
        values=values,
        fitted_exponent=slope,
        bound_constant=bound,
        degenerate=degenerate,
        predicted_exponent=predicted_exponent,
    )


def gaussian_martingale_paths(
    vol: Callable[[np.ndarray], np.ndarray],
    horizon: float,
    n_steps: int,
    n_paths: int,
    seed: int = 0,
) -> list[PathRecord]:
    """Exact paths of M(t) = int_0^t vol(s) dW(s) for deterministic vol.

    Increments over each grid step are independent centered Gaussians whose
    variance is the step integral of vol**2 (3-point Simpson per step), so
    the sampled marginals are exact and usable as scan input without any
    Euler bias.
    """
    times = np.linspace(0.0, horizon, n_steps + 1)
    mid = 0.5 * (times[:-1] + times[1:])
    h = np.diff(times)
    v2 = np.asarray(vol(times), dtype=float) ** 2
    v2_mid = np.asarray(vol(mid), dtype=float) ** 2
    step_var = h / 6.0 * (v2[:-1] + 4.0 * v2_mid + v2[1:])
    empty = np.empty(0)
    empty_i = np.empty(0, dtype=np.int64)
    out = []
    for i in range(n_paths):
        rng = np.random.default_rng(np.random.SeedSequence([int(seed) % 2**64, i]))
        increments = rng.standard_normal(n_steps) * np.sqrt(step_var)
        values = np.concatenate([[0.0], np.cumsum(increments)])
        out.append(
            PathRecord(
                times=times.copy(),
                values=values,
                jump_times=empty,
                jump_sizes=empty,
                jump_noise=empty_i,
                pre_jump_values=empty,
                post_jump_values=empty,
                seed_entropy=(int(seed) % 2**64, i),
            )
        )
    return out


def martingale_moment_scan(
    ensemble: Sequence[PathRecord],
    checkpoints: Sequence[float],
    n_dyadic: int = 8,
) -> DecayFitReport:
    """Fit the growth exponent gamma of E M(t)^2 from drift-free paths.

    M(t) is the recorded path minus its initial value.  The exponent is the
    log-log slope of the ensemble second moment over the checkpoints.  The
    report also carries the mean and standard error of the per-path
    sup over s in [t, T] of |M(s)/s|, at dyadic t = T/2**j, mirroring the
    block argument behind the strong law for square-integrable martingales.
    """
    checkpoints = np.asarray(checkpoints, dtype=float)
    if checkpoints.size < 4:
        raise ValueError("need at least 4 checkpoints")
    mat = np.stack(
        [p.value_at(checkpoints) - p.values[0] for p in ensemble]
    )
    second = (mat**2).mean(axis=0)
    slope, degenerate = np.nan, False
    if np.all(second > 0):
        slope = float(np.polyfit(np.log(checkpoints), np.log(second), 1)[0])
    else:
        degenerate = True
    bound = float(np.max(second / checkpoints**slope)) if not degenerate else 0.0

    horizon = float(ensemble[0].times[-1])
    dyadic = horizon / 2.0 ** np.arange(n_dyadic - 1, -1, -1)
    sup_mat = np.empty((len(ensemble), dyadic.size))
    for i, p in enumerate(ensemble):
        t = p.times
        m = p.values - p.values[0]
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.abs(np.where(t > 0, m / np.where(t > 0, t, 1.0), 0.0))
        # running sup over the tail window [t_j, T], scanned right to left
        rev_max = np.maximum.accumulate(ratio[::-1])[::-1]
        idx = np.searchsorted(t, dyadic, side="left")
        sup_mat[i] = rev_max[np.minimum(idx, t.size - 1)]
    sup_mean = sup_mat.mean(axis=0)
    sup_se = sup_mat.std(axis=0, ddof=1) / np.sqrt(len(ensemble))

    return DecayFitReport(
        x_grid=checkpoints,
        values=second,
        fitted_exponent=slope,
        bound_constant=bound,
        degenerate=degenerate,
        dyadic_times=dyadic,
        dyadic_sup_mean=sup_mean,
        dyadic_sup_se=sup_se,
    )
