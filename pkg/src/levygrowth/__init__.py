"""Simulation and numerical verification of long-time power-law growth
for one-dimensional SDEs driven by centered finite-variance jump noise."""

from .noise import (
    AtomMeasure,
    DensityMeasure,
    JumpEvent,
    LevyMeasure,
    NoiseSpec,
    sample_jump_events,
)
from .coefficients import (
    CoefficientFamily,
    ConditionReport,
    Constant,
    PowerDrift,
    PowerDiffusion,
    TableCoefficient,
    check_drift_asymptotics,
    check_growth_condition,
    coefficient_from_config,
    condition_C_checklist,
)
from .engine import (
    PathRecord,
    SimulationConfig,
    second_moment_curve,
    simulate_ensemble,
    simulate_path,
)
from .transform import (
    SmoothTransform,
    TransformedCoefficients,
    transform_at,
    transformed_diffusion,
    transformed_drift,
    transformed_jump,
)
from .oracles import (
    DecayFitReport,
    compensator_integral,
    decay_scan,
    gaussian_martingale_paths,
    martingale_moment_scan,
    quadratic_integral,
)
from .harness import (
    ExperimentReport,
    ExperimentSpec,
    cli_main,
    run_bounds_experiment,
    run_constant_drift_experiment,
    run_lemma_scan,
    run_moment_growth_experiment,
    run_power_drift_experiment,
)

__version__ = "0.1.0"
