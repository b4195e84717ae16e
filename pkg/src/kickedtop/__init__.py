"""Kicked-top simulator: conditional vs unconditional measurement statistics.

Evolves a spin-j top under periodic twist-and-turn kicks, compares the
statistics of a late measurement with and without an earlier one, and
quantifies the gap with a Hellinger distance, a participation-ratio shift,
and the state's coherence in the measurement basis.  A classical companion
map supplies the stability analysis, and the command-line runner writes
figure-ready CSV grids.
"""
from __future__ import annotations

from .classical import (
    ClassicalPoint,
    classical_orbit,
    classical_step,
    cycle_stability_indicator,
    stability_boundaries,
)
from .config import EXPERIMENTS, ExperimentConfig, build_config, load_config_file
from .errors import ConfigError, NumericalIntegrityError
from .experiments import (
    SweepResult,
    Table,
    run_classical,
    run_contour,
    run_kappa_sweep,
    run_kappa_zero_scan,
    run_odd_n,
    scenario_for,
    write_tables,
)
from .floquet import FloquetOperator, TopParams, build_floquet, evolve
from .measurement import (
    JointDistribution,
    MeasurementContext,
    OutcomeDistribution,
    conditional,
    dephase,
    joint,
    outcome_distribution,
    projectors,
    unconditional,
)
from .metrics import (
    AveragedDistance,
    CoherenceSample,
    DistanceSample,
    Scenario,
    averaged_distance,
    coherence_l1,
    coherence_samples,
    delta,
    distance_samples,
    hellinger,
    participation,
)
from .spin import (
    Axis,
    SpinSystem,
    X_AXIS,
    Y_AXIS,
    Z_AXIS,
    axis_basis,
    axis_operator,
    build_generators,
    coherent_state,
    rotation_operator,
)
from .states import DensityState, maximally_mixed, pure
from .verify import CheckResult, VerificationReport, run_suite

__version__ = "0.1.0"

__all__ = [
    "Axis",
    "AveragedDistance",
    "CheckResult",
    "ClassicalPoint",
    "CoherenceSample",
    "ConfigError",
    "DensityState",
    "DistanceSample",
    "EXPERIMENTS",
    "ExperimentConfig",
    "FloquetOperator",
    "JointDistribution",
    "MeasurementContext",
    "NumericalIntegrityError",
    "OutcomeDistribution",
    "Scenario",
    "SpinSystem",
    "SweepResult",
    "Table",
    "TopParams",
    "VerificationReport",
    "X_AXIS",
    "Y_AXIS",
    "Z_AXIS",
    "axis_basis",
    "axis_operator",
    "averaged_distance",
    "build_config",
    "build_floquet",
    "build_generators",
    "classical_orbit",
    "classical_step",
    "coherence_l1",
    "coherence_samples",
    "coherent_state",
    "conditional",
    "cycle_stability_indicator",
    "delta",
    "dephase",
    "distance_samples",
    "evolve",
    "hellinger",
    "joint",
    "load_config_file",
    "maximally_mixed",
    "outcome_distribution",
    "participation",
    "projectors",
    "pure",
    "rotation_operator",
    "run_classical",
    "run_contour",
    "run_kappa_sweep",
    "run_kappa_zero_scan",
    "run_odd_n",
    "run_suite",
    "scenario_for",
    "stability_boundaries",
    "unconditional",
    "write_tables",
    "__version__",
]
