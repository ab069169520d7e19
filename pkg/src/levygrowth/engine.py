"""Jump-adapted Euler scheme for dX = a(X) dt + sum_k b_k(X-) dZ_k.

Each driving noise Z_k is ``sigma_k * W_k`` plus compensated jumps.  Exact
jump times are merged into the Euler grid so no sub-step crosses a jump;
jumps are applied atomically using the left limit X(t-).  Compensation is
folded into the drift as ``-b_k(X) * int u nu_k(du)`` per unit time, which
matches the ``dt * nu(du)`` compensator exactly between jumps.

Per-path work runs in a compiled kernel; coefficients are encoded as small
parameter vectors so ensembles can run in worker processes without shipping
user callables.  Every noise k of every path consumes its own random
substream, derived injectively from ``(seed, path index, k)``, so ensembles
are reproducible and independent of the execution schedule.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numba import njit

from .coefficients import (
    CoefficientFamily,
    Constant,
    PowerDrift,
    PowerDiffusion,
    TableCoefficient,
)
from .noise import JumpEvent, NoiseSpec, _sample_jump_arrays

__all__ = [
    "SimulationConfig",
    "PathRecord",
    "simulate_path",
    "simulate_ensemble",
    "second_moment_curve",
    "jackknife_se",
]

_MAX_STEPS = 10**9

_KIND_CONSTANT = 0
_KIND_POWER_DRIFT = 1
_KIND_POWER_DIFFUSION = 2
_KIND_TABLE = 3


@dataclass(frozen=True)
class SimulationConfig:
    """Grid, initial value, seed and recording stride for one simulation."""

    horizon: float
    dt: float
    x0: float = 0.0
    seed: int = 0
    record_stride: int = 1

    def __post_init__(self):
        if self.horizon <= 0:
            raise ValueError(f"horizon must be positive, got {self.horizon}")
        if self.dt <= 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if self.dt > self.horizon:
            raise ValueError("dt must not exceed the horizon")
        if self.horizon / self.dt > _MAX_STEPS:
            raise ValueError(f"horizon/dt exceeds the {_MAX_STEPS:.0e} step guard")
        if self.record_stride < 1:
            raise ValueError("record_stride must be at least 1")


@dataclass
class PathRecord:
    """One simulated trajectory on its recorded grid.

    ``values[i]`` is X(times[i]) with the right-continuous convention: at a
    jump time the stored value includes the jump.  Jump bookkeeping is kept
    as plain arrays; ``jumps`` materializes them as events.  ``aborted`` is
    set when the state left the finite range (overflow/NaN); recorded values
    from the abort time onward are NaN.
    """

    times: np.ndarray
    values: np.ndarray
    jump_times: np.ndarray
    jump_sizes: np.ndarray
    jump_noise: np.ndarray
    pre_jump_values: np.ndarray
    post_jump_values: np.ndarray
    aborted: bool = False
    abort_time: float | None = None
    seed_entropy: tuple = ()

    @property
    def jumps(self) -> list[JumpEvent]:
        return [
            JumpEvent(float(t), float(u), int(k))
            for t, u, k in zip(self.jump_times, self.jump_sizes, self.jump_noise)
        ]

    def value_at(self, t) -> np.ndarray:
        """Linear interpolation of the recorded trajectory (clamped outside)."""
        return np.interp(np.asarray(t, dtype=float), self.times, self.values)

    def write_csv(self, path) -> None:
        np.savetxt(
            path,
            np.column_stack([self.times, self.values]),
            fmt="%.17g",
            delimiter=",",
            header="t,x",
            comments="",
        )

    def write_jumps_csv(self, path) -> None:
        np.savetxt(
            path,
            np.column_stack(
                [
                    self.jump_times,
                    self.jump_sizes,
                    self.jump_noise,
                    self.pre_jump_values,
                    self.post_jump_values,
                ]
            ),
            fmt="%.17g",
            delimiter=",",
            header="t,u,k,x_pre,x_post",
            comments="",
        )


def _encode_coefficient(c: CoefficientFamily):
    """(kind, p0, p1, xs, ys) encoding consumed by the compiled kernel."""
    empty = np.empty(0)
    if isinstance(c, Constant):
        return _KIND_CONSTANT, float(c.value), 0.0, empty, empty
    if isinstance(c, PowerDrift):
        return _KIND_POWER_DRIFT, float(c.A), float(c.alpha), empty, empty
    if isinstance(c, PowerDiffusion):
        return _KIND_POWER_DIFFUSION, float(c.scale), float(c.beta), empty, empty
    if isinstance(c, TableCoefficient):
        return (
            _KIND_TABLE,
            0.0,
            0.0,
            np.asarray(c.xs, dtype=float),
            np.asarray(c.ys, dtype=float),
        )
    raise TypeError(
        f"unsupported coefficient type {type(c).__name__}; "
        "use the built-in families (TableCoefficient is the extension point)"
    )


@njit(cache=True)
def _ceval(kind, p0, p1, xs, ys, x):
    if kind == _KIND_CONSTANT:
        return p0
    if kind == _KIND_POWER_DRIFT:
        xp = x if x > 0.0 else 0.0
        return p0 * (1.0 + xp * xp) ** (0.5 * p1)
    if kind == _KIND_POWER_DIFFUSION:
        return p0 * (1.0 + x * x) ** (0.5 * p1)
    # table with clamping
    n = xs.shape[0]
    if x <= xs[0]:
        return ys[0]
    if x >= xs[n - 1]:
        return ys[n - 1]
    lo, hi = 0, n - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if xs[mid] <= x:
            lo = mid
        else:
            hi = mid
    w = (x - xs[lo]) / (xs[hi] - xs[lo])
    return ys[lo] + w * (ys[hi] - ys[lo])


@njit(cache=True)
def _euler_kernel(
    times,
    evid,
    jump_sizes,
    jump_noise,
    normals,
    sigmas,
    mean_rates,
    dkind,
    dp0,
    dp1,
    dxs,
    dys,
    kinds,
    p0s,
    p1s,
    toff,
    tabx,
    taby,
    x0,
    rec_idx,
):
    n = times.shape[0]
    m = kinds.shape[0]
    nrec = rec_idx.shape[0]
    njumps = jump_sizes.shape[0]
    rec = np.full(nrec, np.nan)
    pre = np.full(njumps, np.nan)
    post = np.full(njumps, np.nan)
    x = x0
    abort_at = -1
    r = 0
    while r < nrec and rec_idx[r] == 0:
        rec[r] = x
        r += 1
    for i in range(1, n):
        if abort_at < 0:
            h = times[i] - times[i - 1]
            if h > 0.0:
                drift = _ceval(dkind, dp0, dp1, dxs, dys, x)
                gauss = 0.0
                for k in range(m):
                    b = _ceval(
                        kinds[k], p0s[k], p1s[k],
                        tabx[toff[k] : toff[k + 1]],
                        taby[toff[k] : toff[k + 1]],
                        x,
                    )
                    drift -= b * mean_rates[k]
                    gauss += b * sigmas[k] * normals[i - 1, k]
                x = x + drift * h + math.sqrt(h) * gauss
                if not math.isfinite(x):
                    abort_at = i
            e = evid[i]
            if e >= 0 and abort_at < 0:
                k = jump_noise[e]
                b = _ceval(
                    kinds[k], p0s[k], p1s[k],
                    tabx[toff[k] : toff[k + 1]],
                    taby[toff[k] : toff[k + 1]],
                    x,
                )
                pre[e] = x
                x = x + b * jump_sizes[e]
                post[e] = x
                if not math.isfinite(x):
                    abort_at = i
        while r < nrec and rec_idx[r] == i:
            rec[r] = x if abort_at < 0 else np.nan
            r += 1
    return rec, pre, post, abort_at


def _base_grid(horizon: float, dt: float) -> np.ndarray:
    n_full = int(math.floor(horizon / dt + 1e-9))
    grid = np.arange(n_full + 1, dtype=float) * dt
    if grid[-1] < horizon * (1.0 - 1e-12):
        grid = np.append(grid, horizon)
    else:
        grid[-1] = horizon
    return grid


def _record_positions(n_base: int, stride: int) -> np.ndarray:
    idx = np.arange(0, n_base, stride, dtype=np.int64)
    if idx[-1] != n_base - 1:
        idx = np.append(idx, n_base - 1)
    return idx


def _path_root(seed: int, index: int | None = None) -> np.random.SeedSequence:
    entropy = [int(seed) % 2**64]
    if index is not None:
        entropy.append(int(index))
    return np.random.SeedSequence(entropy)


def _prepare_path_task(
    drift: CoefficientFamily,
    diffusions: Sequence[tuple[CoefficientFamily, NoiseSpec]],
    cfg: SimulationConfig,
    root: np.random.SeedSequence,
) -> dict:
    """Sample jumps and bundle plain-array inputs for the compiled kernel.

    Runs in the parent process so user-supplied density callables never have
    to cross a process boundary; everything in the returned payload pickles.
    """
    m = len(diffusions)
    children = root.spawn(2 * m) if m else []

    all_t, all_u, all_k = [], [], []
    for k, (_, spec) in enumerate(diffusions):
        if spec.jumps is not None:
            rng = np.random.default_rng(children[2 * k])
            t, u = _sample_jump_arrays(spec.jumps, cfg.horizon, rng)
            all_t.append(t)
            all_u.append(u)
            all_k.append(np.full(t.size, k, dtype=np.int64))
    if all_t:
        jt = np.concatenate(all_t)
        ju = np.concatenate(all_u)
        jk = np.concatenate(all_k)
        order = np.argsort(jt, kind="stable")
        jt, ju, jk = jt[order], ju[order], jk[order]
    else:
        jt = np.empty(0)
        ju = np.empty(0)
        jk = np.empty(0, dtype=np.int64)

    dkind, dp0, dp1, dxs, dys = _encode_coefficient(drift)
    kinds = np.empty(m, dtype=np.int64)
    p0s = np.empty(m)
    p1s = np.empty(m)
    toff = np.zeros(m + 1, dtype=np.int64)
    tab_x, tab_y = [], []
    for k, (coeff, _) in enumerate(diffusions):
        kinds[k], p0s[k], p1s[k], xs, ys = _encode_coefficient(coeff)
        tab_x.append(xs)
        tab_y.append(ys)
        toff[k + 1] = toff[k] + xs.size
    tabx = np.concatenate(tab_x) if tab_x else np.empty(0)
    taby = np.concatenate(tab_y) if tab_y else np.empty(0)

    return {
        "horizon": cfg.horizon,
        "dt": cfg.dt,
        "x0": cfg.x0,
        "record_stride": cfg.record_stride,
        "jump_times": jt,
        "jump_sizes": ju,
        "jump_noise": jk,
        "gauss_seeds": [children[2 * k + 1] for k in range(m)],
        "sigmas": np.array([spec.sigma for _, spec in diffusions]),
        "mean_rates": np.array([spec.mean_jump_rate() for _, spec in diffusions]),
        "drift_enc": (dkind, dp0, dp1, dxs, dys),
        "diff_enc": (kinds, p0s, p1s, toff, tabx, taby),
        "entropy": tuple(root.entropy) if isinstance(root.entropy, (list, tuple)) else (root.entropy,),
    }


def _run_path_task(task: dict) -> PathRecord:
    base = _base_grid(task["horizon"], task["dt"])
    jt, ju, jk = task["jump_times"], task["jump_sizes"], task["jump_noise"]

    all_times = np.concatenate([base, jt])
    src = np.concatenate([np.full(base.size, -1, dtype=np.int64), np.arange(jt.size)])
    order = np.argsort(all_times, kind="stable")
    times = all_times[order]
    evid = src[order]

    rec_base = _record_positions(base.size, task["record_stride"])
    # record after any jump that shares the grid time (right-continuous values)
    rec_idx = np.searchsorted(times, base[rec_base], side="right") - 1

    m = task["sigmas"].size
    n_seg = times.size - 1
    normals = np.empty((n_seg, m))
    for k, seq in enumerate(task["gauss_seeds"]):
        normals[:, k] = np.random.default_rng(seq).standard_normal(n_seg)

    dkind, dp0, dp1, dxs, dys = task["drift_enc"]
    kinds, p0s, p1s, toff, tabx, taby = task["diff_enc"]
    rec, pre, post, abort_at = _euler_kernel(
        times, evid, ju, jk, normals,
        task["sigmas"], task["mean_rates"],
        dkind, dp0, dp1, dxs, dys,
        kinds, p0s, p1s, toff, tabx, taby,
        task["x0"], rec_idx,
    )
    return PathRecord(
        times=base[rec_base],
        values=rec,
        jump_times=jt,
        jump_sizes=ju,
        jump_noise=jk,
        pre_jump_values=pre,
        post_jump_values=post,
        aborted=abort_at >= 0,
        abort_time=float(times[abort_at]) if abort_at >= 0 else None,
        seed_entropy=task["entropy"],
    )


def simulate_path(
    drift: CoefficientFamily,
    diffusions: Sequence[tuple[CoefficientFamily, NoiseSpec]],
    cfg: SimulationConfig,
    rng: np.random.SeedSequence | None = None,
) -> PathRecord:
    """Simulate one path of dX = a(X) dt + sum_k b_k(X-) dZ_k.

    ``diffusions`` pairs each coefficient b_k with its driving NoiseSpec.
    Randomness derives from ``cfg.seed`` (or an explicit SeedSequence), with
    one substream per noise for jumps and one for Gaussian increments, so the
    output is bit-reproducible.  A path whose state overflows is returned
    flagged as aborted rather than raising.
    """
    root = rng if rng is not None else _path_root(cfg.seed)
    return _run_path_task(_prepare_path_task(drift, diffusions, cfg, root))


def simulate_ensemble(
    drift: CoefficientFamily,
    diffusions: Sequence[tuple[CoefficientFamily, NoiseSpec]],
    cfg: SimulationConfig,
    n_paths: int,
    base_seed: int | None = None,
    n_jobs: int = 1,
) -> list[PathRecord]:
    """Simulate ``n_paths`` independent paths, ordered by path index.

    Path ``i`` draws from substreams keyed by ``(base_seed, i)``; the result
    is identical for serial and process-parallel execution.  Aborted paths
    come back flagged, never as exceptions.
    """
    if n_paths < 1:
        raise ValueError(f"n_paths must be at least 1, got {n_paths}")
    seed = cfg.seed if base_seed is None else base_seed
    tasks = [
        _prepare_path_task(drift, diffusions, cfg, _path_root(seed, i))
        for i in range(n_paths)
    ]
    if n_jobs == 1 or n_paths == 1:
        return [_run_path_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=n_jobs) as pool:
        return list(pool.map(_run_path_task, tasks, chunksize=max(1, n_paths // (4 * n_jobs))))


def jackknife_se(samples: np.ndarray) -> float:
    """Leave-one-out standard error of the sample mean."""
    samples = np.asarray(samples, dtype=float)
    n = samples.size
    if n < 2:
        return float("nan")
    total = samples.sum()
    loo = (total - samples) / (n - 1)
    return float(np.sqrt((n - 1) / n * np.sum((loo - loo.mean()) ** 2)))


def second_moment_curve(
    ensemble: Sequence[PathRecord], checkpoints: Sequence[float]
) -> list[tuple[float, float, float]]:
    """Ensemble mean of X(t)^2 with jackknife standard error per checkpoint."""
    checkpoints = np.asarray(checkpoints, dtype=float)
    values = np.stack([p.value_at(checkpoints) for p in ensemble])
    out = []
    for j, t in enumerate(checkpoints):
        sq = values[:, j] ** 2
        out.append((float(t), float(sq.mean()), jackknife_se(sq)))
    return out
