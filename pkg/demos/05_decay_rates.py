"""Decay rates behind the growth theorems, by quadrature and by simulation.

Part 1 tabulates the jump-compensator integral and the squared-difference
integral on a log grid and fits their decay exponents against the predicted
rates -(1 + alpha - 2 beta) and 2 (beta - alpha).

Part 2 estimates the growth exponent gamma of E M(t)^2 for three centered
noises and prints the shrinking-window sup curve of |M(t)/t| that drives the
strong law M(t)/t -> 0 for gamma < 2.
"""
import numpy as np

from levygrowth import (
    AtomMeasure,
    Constant,
    NoiseSpec,
    PowerDiffusion,
    SimulationConfig,
    SmoothTransform,
    compensator_integral,
    decay_scan,
    gaussian_martingale_paths,
    martingale_moment_scan,
    quadratic_integral,
    simulate_ensemble,
)

alpha = 0.5
T = SmoothTransform(alpha)
nu = AtomMeasure(((-1.0, 0.5), (1.0, 0.5)))
grid = np.geomspace(10.0, 1e6, 13)

print("=" * 70)
print("  Quadrature scans (alpha = 0.5, symmetric two-point jumps)")
print("=" * 70)
print(f"  {'beta':>5}  {'comp fit':>9} {'predicted':>9}   {'quad fit':>9} {'predicted':>9}")
for beta in (0.0, 0.25, 0.4):
    c = PowerDiffusion(1.0, beta)
    pc = -(1 + alpha - 2 * beta)
    rc = decay_scan(lambda x: compensator_integral(x, T, c, nu), grid, pc)
    pq = 2 * (beta - alpha)
    rq = decay_scan(lambda x: quadratic_integral(x, T, c, nu), grid, pq)
    print(f"  {beta:5.2f}  {rc.fitted_exponent:9.4f} {pc:9.2f}   "
          f"{rq.fitted_exponent:9.4f} {pq:9.2f}")

print()
print("=" * 70)
print("  Moment growth of centered noise integrals (n=300, T=1000)")
print("=" * 70)
cp = np.geomspace(10.0, 1e3, 8)
cfg = SimulationConfig(horizon=1e3, dt=0.25, x0=0.0, seed=17, record_stride=1)

runs = [
    ("brownian", lambda: simulate_ensemble(
        Constant(0.0), [(Constant(1.0), NoiseSpec(sigma=1.0))], cfg, 300)),
    ("compensated poisson", lambda: simulate_ensemble(
        Constant(0.0), [(Constant(1.0), NoiseSpec(sigma=0.0, jumps=nu))], cfg, 300)),
    ("vol(s) = s^0.2", lambda: gaussian_martingale_paths(
        lambda s: np.asarray(s) ** 0.2, 1e3, 4000, 300, seed=17)),
]
for label, make in runs:
    report = martingale_moment_scan(make(), cp)
    print(f"\n  {label}: fitted gamma = {report.fitted_exponent:.4f}")
    sup = report.dyadic_sup_mean
    times = report.dyadic_times
    print("    sup |M(s)/s| over [t, T]:")
    for t, v in zip(times[-4:], sup[-4:]):
        print(f"      t = {t:8.2f}   {v:.5f}")
