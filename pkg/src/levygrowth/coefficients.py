"""Parametric drift and diffusion coefficients with growth-condition checks.

Families are regularized power laws ``(1 + x**2)**(gamma/2)`` rather than raw
``|x|**gamma``: same asymptotics, but smooth at the origin and Lipschitz for
``gamma <= 1``.  The checkers turn the drift-asymptotics and noise-growth
hypotheses of the limit theorems into grid predicates with explicit witnesses.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .noise import AtomMeasure

__all__ = [
    "CoefficientFamily",
    "Constant",
    "PowerDrift",
    "PowerDiffusion",
    "TableCoefficient",
    "ConditionReport",
    "coefficient_from_config",
    "check_drift_asymptotics",
    "check_growth_condition",
    "condition_C_checklist",
    "default_drift_grid",
    "default_growth_grid",
]


class CoefficientFamily:
    """Scalar coefficient function of the state, defined on all reals."""

    kind: str = "abstract"

    def evaluate(self, x):
        raise NotImplementedError

    def __call__(self, x):
        return self.evaluate(x)

    def lipschitz(self) -> bool | None:
        """True/False when decidable from the parameters, None for unknown."""
        return None

    def to_config(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Constant(CoefficientFamily):
    value: float
    kind = "constant"

    def evaluate(self, x):
        x = np.asarray(x, dtype=float)
        out = np.full_like(x, self.value)
        return out if out.ndim else float(out)

    def lipschitz(self):
        return True

    def to_config(self):
        return {"kind": "constant", "value": self.value}


@dataclass(frozen=True)
class PowerDrift(CoefficientFamily):
    """``A * (1 + max(x,0)**2)**(alpha/2)``: positive, ~ A*x**alpha as x -> +inf."""

    A: float
    alpha: float
    kind = "power_drift"

    def __post_init__(self):
        if self.A <= 0:
            raise ValueError(f"A must be positive, got {self.A}")
        if not 0.0 <= self.alpha < 1.0:
            raise ValueError(f"alpha must lie in [0, 1), got {self.alpha}")

    def evaluate(self, x):
        xp = np.maximum(np.asarray(x, dtype=float), 0.0)
        out = self.A * (1.0 + xp**2) ** (0.5 * self.alpha)
        return out if out.ndim else float(out)

    def lipschitz(self):
        return True  # alpha < 1 keeps the regularized derivative bounded

    def to_config(self):
        return {"kind": "power_drift", "A": self.A, "alpha": self.alpha}


@dataclass(frozen=True)
class PowerDiffusion(CoefficientFamily):
    """``scale * (1 + x**2)**(beta/2)``; squared it grows like ``|x|**(2*beta)``."""

    scale: float
    beta: float
    kind = "power_diffusion"

    def __post_init__(self):
        if self.scale < 0:
            raise ValueError(f"scale must be nonnegative, got {self.scale}")
        if self.beta < 0:
            raise ValueError(f"beta must be nonnegative, got {self.beta}")

    def evaluate(self, x):
        x = np.asarray(x, dtype=float)
        out = self.scale * (1.0 + x**2) ** (0.5 * self.beta)
        return out if out.ndim else float(out)

    def lipschitz(self):
        return bool(self.beta <= 1.0)

    def to_config(self):
        return {"kind": "power_diffusion", "scale": self.scale, "beta": self.beta}


@dataclass(frozen=True)
class TableCoefficient(CoefficientFamily):
    """User function sampled on a grid, evaluated by linear interpolation.

    Values clamp to the endpoints outside the grid.  This is the extension
    point for coefficients that are not in the built-in families.
    """

    xs: tuple[float, ...]
    ys: tuple[float, ...]
    kind = "table"

    def __post_init__(self):
        if len(self.xs) != len(self.ys) or len(self.xs) < 2:
            raise ValueError("table needs matching xs/ys with at least 2 points")
        if np.any(np.diff(self.xs) <= 0):
            raise ValueError("table grid must be strictly increasing")

    @staticmethod
    def from_function(fn, xs: Sequence[float]) -> "TableCoefficient":
        xs = np.asarray(xs, dtype=float)
        return TableCoefficient(tuple(xs.tolist()), tuple(float(fn(x)) for x in xs))

    def evaluate(self, x):
        out = np.interp(np.asarray(x, dtype=float), self.xs, self.ys)
        return out if out.ndim else float(out)

    def to_config(self):
        return {"kind": "table", "xs": list(self.xs), "ys": list(self.ys)}


def coefficient_from_config(cfg: dict) -> CoefficientFamily:
    """Build a coefficient family from its config dictionary."""
    kind = cfg.get("kind")
    if kind == "constant":
        return Constant(float(cfg["value"]))
    if kind == "power_drift":
        return PowerDrift(float(cfg["A"]), float(cfg["alpha"]))
    if kind == "power_diffusion":
        return PowerDiffusion(float(cfg["scale"]), float(cfg["beta"]))
    if kind == "table":
        return TableCoefficient(tuple(cfg["xs"]), tuple(cfg["ys"]))
    raise ValueError(f"unknown coefficient kind {kind!r}")


@dataclass
class ConditionReport:
    """Verdict of one hypothesis check, with the worst grid point on failure."""

    condition_id: str  # "A", "A-prime", "B" or "C-checklist"
    verdict: str  # "pass", "fail" or "unchecked"
    witness: dict | None = None
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in ("pass", "fail", "unchecked"):
            raise ValueError(f"bad verdict {self.verdict!r}")
        if self.verdict == "fail" and self.witness is None:
            raise ValueError("a failing report must carry a witness")

    def to_dict(self) -> dict:
        return {
            "condition_id": self.condition_id,
            "verdict": self.verdict,
            "witness": self.witness,
            "details": self.details,
        }


def default_drift_grid() -> np.ndarray:
    """Log-spaced positive grid 1e1..1e6 used by the drift-asymptotics check."""
    return np.geomspace(10.0, 1e6, 26)


def default_growth_grid() -> np.ndarray:
    """Grid for the growth check: 0 and +-(log-spaced 1e0..1e6)."""
    pos = np.geomspace(1.0, 1e6, 61)
    return np.concatenate([-pos[::-1], [0.0], pos])


def _growth_envelope(x: np.ndarray, C: float, beta: float) -> np.ndarray:
    # |0|**(2*beta) is taken as 0 for every beta >= 0, including beta == 0,
    # so the envelope is monotone in (C, beta) on grids that avoid 0 < |x| < 1.
    ax = np.abs(x)
    pow_term = np.where(ax > 0, ax ** (2.0 * beta), 0.0)
    return C * (1.0 + pow_term)


def check_drift_asymptotics(
    a: CoefficientFamily,
    A: float,
    alpha: float,
    grid: np.ndarray | None = None,
    tol: float = 1e-3,
) -> ConditionReport:
    """Check ``a(x) ~ A * x**alpha`` as ``x -> +inf`` on a log-spaced grid.

    Passes when ``|a(x)/(A x**alpha) - 1|`` is nonincreasing along the tail
    half of the grid and the final value is below ``tol``.  Never raises; a
    failure carries the worst tail point as witness.
    """
    if grid is None:
        grid = default_drift_grid()
    grid = np.asarray(grid, dtype=float)
    ratio = np.asarray(a.evaluate(grid)) / (A * grid**alpha)
    dev = np.abs(ratio - 1.0)
    half = len(dev) // 2
    tail, tail_x = dev[half:], grid[half:]
    slack = 1e-15 + 1e-12 * tail[:-1]
    monotone = bool(np.all(tail[1:] <= tail[:-1] + slack))
    converged = bool(tail[-1] < tol)
    worst = int(np.argmax(tail))
    ok = monotone and converged
    return ConditionReport(
        condition_id="A",
        verdict="pass" if ok else "fail",
        witness=None
        if ok
        else {
            "x": float(tail_x[worst]),
            "ratio": float(ratio[half + worst]),
            "deviation": float(tail[worst]),
        },
        details={
            "A": A,
            "alpha": alpha,
            "tolerance": tol,
            "final_deviation": float(tail[-1]),
            "tail_monotone": monotone,
        },
    )


def check_growth_condition(
    bs: Sequence[CoefficientFamily],
    C: float,
    beta: float,
    grid: np.ndarray | None = None,
) -> ConditionReport:
    """Check ``sum b_k(x)**2 <= C * (1 + |x|**(2*beta))`` at every grid point."""
    if C <= 0:
        raise ValueError(f"C must be positive, got {C}")
    if grid is None:
        grid = default_growth_grid()
    grid = np.asarray(grid, dtype=float)
    total = np.zeros_like(grid)
    for b in bs:
        total = total + np.asarray(b.evaluate(grid)) ** 2
    bound = _growth_envelope(grid, C, beta)
    excess = total / bound
    worst = int(np.argmax(excess))
    ok = bool(excess[worst] <= 1.0)
    report = ConditionReport(
        condition_id="B",
        verdict="pass" if ok else "fail",
        witness=None
        if ok
        else {
            "x": float(grid[worst]),
            "sum_b_squared": float(total[worst]),
            "bound": float(bound[worst]),
            "ratio": float(excess[worst]),
        },
        details={"C": C, "beta": beta, "worst_ratio": float(excess[worst])},
    )
    return report


def _drift_limit_positive(a: CoefficientFamily) -> bool | None:
    if isinstance(a, PowerDrift):
        return True
    if isinstance(a, Constant):
        return a.value > 0
    return None


def condition_C_checklist(
    a: CoefficientFamily,
    bs: Sequence[CoefficientFamily],
    noises: Sequence,
) -> ConditionReport:
    """Advisory checklist for the divergence hypothesis (solution -> +inf).

    Divergence is a property of the solution, not of the inputs, so the
    verdict is always ``unchecked``; the details record which of the known
    sufficient conditions the configuration satisfies syntactically:
    Lipschitz coefficients, a positive drift limit, and at least one noise
    whose coefficient never vanishes and which has a Gaussian component or
    only positive jumps.
    """

    def tri(flag: bool | None) -> str:
        return "unknown" if flag is None else ("yes" if flag else "no")

    lip_flags = [a.lipschitz()] + [b.lipschitz() for b in bs]
    if any(f is False for f in lip_flags):
        lipschitz = False
    elif any(f is None for f in lip_flags):
        lipschitz = None
    else:
        lipschitz = True

    nondeg = []
    for b, noise in zip(bs, noises):
        if isinstance(b, Constant):
            b_nonzero: bool | None = b.value != 0
        elif isinstance(b, (PowerDrift, PowerDiffusion)):
            b_nonzero = b.evaluate(0.0) > 0
        else:
            b_nonzero = None
        if noise.sigma > 0:
            noise_ok: bool | None = True
        elif noise.jumps is None:
            noise_ok = False
        elif isinstance(noise.jumps, AtomMeasure):
            noise_ok = all(u > 0 for u, w in noise.jumps.atoms if w > 0)
        else:
            noise_ok = noise.jumps.support[0] > 0
        if b_nonzero is None or noise_ok is None:
            nondeg.append(None)
        else:
            nondeg.append(b_nonzero and noise_ok)
    if any(f is True for f in nondeg):
        driving = True
    elif all(f is False for f in nondeg) and nondeg:
        driving = False
    elif not nondeg:
        driving = False
    else:
        driving = None

    return ConditionReport(
        condition_id="C-checklist",
        verdict="unchecked",
        details={
            "lipschitz_coefficients": tri(lipschitz),
            "drift_limit_positive": tri(_drift_limit_positive(a)),
            "nondegenerate_driving_noise": tri(driving),
            "per_noise": [tri(f) for f in nondeg],
        },
    )
