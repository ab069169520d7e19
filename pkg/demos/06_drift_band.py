"""Two-sided growth bounds for a drift that never settles.

The drift oscillates between 1 and 2 (slowly, in the logarithm of the
state), so X(t)/t cannot converge; it must still stay asymptotically inside
the band.  The experiment tracks the 5-95% envelope of X(t)/t.
"""
from levygrowth.harness import load_spec, run_experiment

config = {
    "name": "demo-drift-band",
    "theorem": "bounds",
    "A_minus": 1.0,
    "A_plus": 2.0,
    "diffusion": [{"kind": "constant", "value": 1.0, "sigma": 1.0}],
    "horizon": 2000.0,
    "dt": 0.02,
    "n_paths": 150,
    "x0": 0.0,
    "tolerance": 0.1,
    "base_seed": 1618,
}

report = run_experiment(load_spec(config))

print("=" * 70)
print(f"  {report.name}: verdict = {report.verdict}")
print("=" * 70)
print("  envelope of X(t)/t against the band [1, 2]")
print(f"  {'t':>10}  {'q05':>9}  {'median':>9}  {'q95':>9}")
for s in report.checkpoints:
    print(f"  {s['t']:10.1f}  {s['q05']:9.4f}  {s['median']:9.4f}  {s['q95']:9.4f}")
print()
final = report.checkpoints[-1]
print(f"final envelope [{final['q05']:.3f}, {final['q95']:.3f}] inside "
      f"[{config['A_minus'] - config['tolerance']}, {config['A_plus'] + config['tolerance']}]")
