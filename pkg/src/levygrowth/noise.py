"""Centered finite-variance jump noise.

A driving noise is ``sigma * W(t)`` plus a compensated compound-Poisson part
whose jump sizes follow a finite jump measure.  The measure must have finite
total mass (finite activity) and finite second moment; infinite-activity
measures have to be truncated by the caller before they reach this module.
Compensation is never optional: every simulated noise is centered.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable

import numpy as np

__all__ = [
    "LevyMeasure",
    "AtomMeasure",
    "DensityMeasure",
    "NoiseSpec",
    "JumpEvent",
    "sample_jump_events",
]


@dataclass(frozen=True)
class JumpEvent:
    """One jump of a sampled path: time, mark (raw jump size) and noise index."""

    time: float
    size: float
    noise_index: int = 0


class LevyMeasure:
    """Finite jump measure on the real line.

    Concrete variants are :class:`AtomMeasure` (weighted point masses) and
    :class:`DensityMeasure` (a nonnegative density on a compact interval,
    integrated by composite Simpson quadrature).  Both expose total mass,
    power moments, integration of arbitrary functions and i.i.d. sampling of
    jump sizes from the normalized measure.
    """

    def mass(self) -> float:
        """Total mass lambda; the Poisson intensity of the jump clock."""
        raise NotImplementedError

    def moment(self, p: int) -> float:
        """Integral of u**p against the measure, for p in {1, 2}."""
        raise NotImplementedError

    def integrate(self, fn: Callable[[np.ndarray], np.ndarray]) -> float:
        """Integral of ``fn(u)`` against the measure."""
        raise NotImplementedError

    def sample_sizes(self, n: int, rng: np.random.Generator) -> np.ndarray:
        """Draw ``n`` i.i.d. jump sizes from the normalized measure."""
        raise NotImplementedError

    def to_config(self) -> dict:
        raise NotImplementedError

    @staticmethod
    def from_config(cfg: dict) -> "LevyMeasure":
        """Build a measure from its config dictionary.

        ``{"type": "atoms", "atoms": [[u, w], ...]}`` or
        ``{"type": "density", "support": [lo, hi], "nodes": n, "values": [...]}``
        where ``values`` samples the density at ``nodes`` equally spaced points
        over the support (omitted values mean the constant density 1).
        """
        kind = cfg.get("type")
        if kind == "atoms":
            return AtomMeasure(tuple((float(u), float(w)) for u, w in cfg["atoms"]))
        if kind == "density":
            lo, hi = (float(v) for v in cfg["support"])
            nodes = int(cfg.get("nodes", 201))
            if "values" in cfg:
                vals = np.asarray(cfg["values"], dtype=float)
                if vals.size != nodes:
                    raise ValueError(
                        f"density 'values' must have length {nodes}, got {vals.size}"
                    )
                grid = np.linspace(lo, hi, nodes)

                def density(u, _g=grid, _v=vals):
                    return np.interp(u, _g, _v)

            else:

                def density(u):
                    return np.ones_like(np.asarray(u, dtype=float))

            return DensityMeasure(density, (lo, hi), nodes)
        raise ValueError(f"unknown jump measure type {kind!r}")


@dataclass(frozen=True)
class AtomMeasure(LevyMeasure):
    """Jump measure made of weighted atoms ``(location, weight)``."""

    atoms: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if not self.atoms:
            raise ValueError("atom measure needs at least one atom")
        for u, w in self.atoms:
            if not (math.isfinite(u) and math.isfinite(w)):
                raise ValueError("atom locations and weights must be finite")
            if w < 0:
                raise ValueError(f"atom weight must be nonnegative, got {w}")
        if self.mass() <= 0:
            raise ValueError("total mass must be positive")

    @cached_property
    def _locations(self) -> np.ndarray:
        return np.array([u for u, _ in self.atoms], dtype=float)

    @cached_property
    def _weights(self) -> np.ndarray:
        return np.array([w for _, w in self.atoms], dtype=float)

    def mass(self) -> float:
        return float(self._weights.sum())

    def moment(self, p: int) -> float:
        return float((self._weights * self._locations**p).sum())

    def integrate(self, fn) -> float:
        return float((self._weights * np.asarray(fn(self._locations))).sum())

    def sample_sizes(self, n: int, rng: np.random.Generator) -> np.ndarray:
        idx = rng.choice(len(self.atoms), size=n, p=self._weights / self.mass())
        return self._locations[idx]

    def to_config(self) -> dict:
        return {"type": "atoms", "atoms": [[u, w] for u, w in self.atoms]}


@dataclass(frozen=True)
class DensityMeasure(LevyMeasure):
    """Jump measure with density ``d(u) >= 0`` on a compact support.

    Integrals use composite Simpson quadrature on ``nodes`` uniform points
    (an even node count is bumped up by one so the rule applies).  Sampling
    inverts the piecewise-linear CDF built on the same grid.
    """

    density: Callable[[np.ndarray], np.ndarray]
    support: tuple[float, float]
    nodes: int = 201

    def __post_init__(self):
        lo, hi = self.support
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            raise ValueError(f"support must be a finite interval, got {self.support}")
        if self.nodes < 2:
            raise ValueError("need at least 2 quadrature nodes")
        vals = self._values
        if np.any(vals < 0):
            raise ValueError("density must be nonnegative on its support")
        if self.mass() <= 0:
            raise ValueError("total mass must be positive")

    @cached_property
    def _grid(self) -> np.ndarray:
        n = self.nodes if self.nodes % 2 == 1 else self.nodes + 1
        return np.linspace(self.support[0], self.support[1], n)

    @cached_property
    def _values(self) -> np.ndarray:
        return np.asarray(self.density(self._grid), dtype=float)

    @cached_property
    def _simpson_weights(self) -> np.ndarray:
        n = self._grid.size
        h = (self.support[1] - self.support[0]) / (n - 1)
        w = np.ones(n)
        w[1:-1:2] = 4.0
        w[2:-1:2] = 2.0
        return w * (h / 3.0)

    def mass(self) -> float:
        return float(self._simpson_weights @ self._values)

    def moment(self, p: int) -> float:
        return float(self._simpson_weights @ (self._grid**p * self._values))

    def integrate(self, fn) -> float:
        return float(self._simpson_weights @ (np.asarray(fn(self._grid)) * self._values))

    @cached_property
    def _cdf(self) -> np.ndarray:
        # trapezoid CDF on the quadrature grid, normalized to 1
        g, v = self._grid, self._values
        c = np.concatenate([[0.0], np.cumsum(0.5 * (v[1:] + v[:-1]) * np.diff(g))])
        return c / c[-1]

    def sample_sizes(self, n: int, rng: np.random.Generator) -> np.ndarray:
        q = rng.uniform(0.0, 1.0, size=n)
        return np.interp(q, self._cdf, self._grid)

    def to_config(self) -> dict:
        return {
            "type": "density",
            "support": [self.support[0], self.support[1]],
            "nodes": int(self._grid.size),
            "values": self._values.tolist(),
        }


@dataclass(frozen=True)
class NoiseSpec:
    """One driving noise: Gaussian coefficient plus optional jump measure.

    The represented process is ``sigma * W(t)`` plus compensated jumps with
    the given measure, so it is always centered.  ``jumps=None`` and
    ``sigma=0`` is the (explicit) zero process.
    """

    sigma: float = 0.0
    jumps: LevyMeasure | None = None

    def __post_init__(self):
        if self.sigma < 0:
            raise ValueError(f"sigma must be nonnegative, got {self.sigma}")

    def variance_rate(self) -> float:
        """sigma**2 + second moment of the jump measure; E Z(t)^2 = t * rate."""
        m2 = self.jumps.moment(2) if self.jumps is not None else 0.0
        return self.sigma**2 + m2

    def mean_jump_rate(self) -> float:
        """First moment of the jump measure; the compensator drift per unit time."""
        return self.jumps.moment(1) if self.jumps is not None else 0.0

    def to_config(self) -> dict:
        cfg: dict = {"sigma": self.sigma}
        if self.jumps is not None:
            cfg["jumps"] = self.jumps.to_config()
        return cfg

    @staticmethod
    def from_config(cfg: dict) -> "NoiseSpec":
        jumps = LevyMeasure.from_config(cfg["jumps"]) if "jumps" in cfg else None
        return NoiseSpec(sigma=float(cfg.get("sigma", 0.0)), jumps=jumps)


def _sample_jump_arrays(
    measure: LevyMeasure, horizon: float, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """Jump times (sorted) and sizes over ``[0, horizon]`` as plain arrays."""
    if horizon <= 0:
        raise ValueError(f"horizon must be positive, got {horizon}")
    lam = measure.mass()
    count = rng.poisson(lam * horizon)
    times = np.sort(rng.uniform(0.0, horizon, size=count))
    sizes = measure.sample_sizes(count, rng)
    return times, sizes


def sample_jump_events(
    measure: LevyMeasure,
    horizon: float,
    rng: np.random.Generator,
    noise_index: int = 0,
) -> list[JumpEvent]:
    """Sample the jumps of one path over ``[0, horizon]``.

    The count is Poisson with intensity ``mass * horizon``, times are uniform
    (returned sorted) and sizes i.i.d. from the normalized measure.  Output is
    a deterministic function of the generator state.
    """
    times, sizes = _sample_jump_arrays(measure, horizon, rng)
    return [
        JumpEvent(float(t), float(u), noise_index) for t, u in zip(times, sizes)
    ]
