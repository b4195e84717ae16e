"""Batch experiment runs that turn configurations into CSV-ready tables.

Each run walks a kick-strength grid and emits long-format rows.  Grid
points are independent, so a thread pool may fan them out; results are
collected in grid order either way and the output bytes do not depend on
the worker count.
"""
from __future__ import annotations

import math
import platform
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .classical import (
    ClassicalPoint,
    classical_orbit,
    cycle_stability_indicator,
    stability_boundaries,
)
from .config import ExperimentConfig
from .errors import ConfigError, NumericalIntegrityError
from .floquet import TopParams
from .metrics import Scenario, coherence_samples, distance_samples
from .spin import SpinSystem, X_AXIS, Y_AXIS, Z_AXIS, coherent_state
from .states import pure

__all__ = [
    "Table",
    "SweepResult",
    "SWEEP_HEADER",
    "CONTOUR_HEADER",
    "CLASSICAL_HEADER",
    "ORBIT_HEADER",
    "scenario_for",
    "run_kappa_sweep",
    "run_contour",
    "run_kappa_zero_scan",
    "run_odd_n",
    "run_classical",
    "write_tables",
    "n_spread_summary",
    "parity_contrast",
    "RUNNERS",
]

SWEEP_HEADER = (
    "scenario", "state", "axis", "j", "kappa0", "n", "T",
    "metric", "mean", "second_moment",
)
CONTOUR_HEADER = ("scenario", "t_alpha", "kappa0", "metric", "value")
CLASSICAL_HEADER = ("scenario", "kappa0", "metric", "value")
ORBIT_HEADER = ("scenario", "kappa0", "orbit", "step", "x", "y", "z")

_AXES = {"x": X_AXIS, "y": Y_AXIS, "z": Z_AXIS}

# Fixed diagnostic for the near-pole orbit: a 0.01-size nudge off (0,1,0).
POLE_NUDGE_X = 0.01
POLE_NUDGE_Y = math.sqrt(1.0 - POLE_NUDGE_X**2)
DIVERGENCE_STEPS = 200
DIVERGENCE_THRESHOLD = 0.25
DIVERGENCE_SCAN = tuple(round(1.0 + 0.05 * i, 10) for i in range(41))
ORBIT_SAMPLE_KAPPAS = (0.5, 1.5, 2.5, 3.0, 6.0)


@dataclass(frozen=True, eq=False)
class Table:
    """One named CSV table: a header and uniform finite rows."""

    name: str
    header: tuple[str, ...]
    rows: tuple[tuple, ...]

    def __post_init__(self) -> None:
        for i, row in enumerate(self.rows):
            if len(row) != len(self.header):
                raise NumericalIntegrityError(
                    f"table {self.name}: row {i} has {len(row)} cells, "
                    f"header has {len(self.header)}"
                )
            for value in row:
                if isinstance(value, float) and not math.isfinite(value):
                    raise NumericalIntegrityError(
                        f"table {self.name}: non-finite value in row {i}: {row!r}"
                    )


@dataclass(frozen=True, eq=False)
class SweepResult:
    config: ExperimentConfig
    tables: tuple[Table, ...]
    elapsed: float


def scenario_for(config: ExperimentConfig, kappa0: float) -> Scenario:
    system = SpinSystem(config.j)
    axis = _AXES[config.measurement_axis]
    rho0 = pure(coherent_state(system, _AXES[config.state_axis], sign=config.state_sign))
    return Scenario(
        rho0=rho0,
        params=TopParams(system, kappa0),
        axis_alice=axis,
        axis_bob=axis,
    )


def _over_grid(config: ExperimentConfig, worker):
    grid = config.kappa_grid()
    if config.threads > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            return list(pool.map(worker, grid))
    return [worker(k) for k in grid]


def _mean_and_second_moment(values) -> tuple[float, float]:
    arr = np.asarray(values, dtype=float)
    return float(arr.mean()), float((arr**2).mean())


def _sweep_tables(config: ExperimentConfig, label: str) -> tuple[Table, ...]:
    def block(kappa0: float) -> list[tuple]:
        scenario = scenario_for(config, kappa0)
        coh_mean, coh_sm = _mean_and_second_moment(
            [s.value for s in coherence_samples(scenario, config.T)]
        )
        prefix = (label, config.state, config.measurement_axis, config.j, kappa0)
        rows = []
        for n in config.n:
            samples = distance_samples(scenario, n, config.T)
            for metric in ("hellinger", "delta"):
                mean, sm = _mean_and_second_moment([getattr(s, metric) for s in samples])
                rows.append(prefix + (n, config.T, metric, mean, sm))
            rows.append(prefix + (n, config.T, "coherence", coh_mean, coh_sm))
        return rows

    rows = [row for block_rows in _over_grid(config, block) for row in block_rows]
    return (Table(label, SWEEP_HEADER, tuple(rows)),)


def run_kappa_sweep(config: ExperimentConfig) -> SweepResult:
    """Schedule-averaged metrics against kick strength, one row set per n."""
    start = time.perf_counter()
    tables = _sweep_tables(config, f"sweep_kappa_{config.state}")
    return SweepResult(config, tables, time.perf_counter() - start)


def run_odd_n(config: ExperimentConfig) -> SweepResult:
    """The sweep again, restricted to odd lags where rotation alone disturbs."""
    if any(n % 2 == 0 for n in config.n):
        raise ConfigError(f"odd-n run needs odd lags, got {config.n!r}")
    start = time.perf_counter()
    tables = _sweep_tables(config, f"odd_n_{config.state}")
    return SweepResult(config, tables, time.perf_counter() - start)


def run_contour(config: ExperimentConfig) -> SweepResult:
    """Raw per-t_alpha values on the (t_alpha, kappa0) grid, no averaging."""
    start = time.perf_counter()
    label = f"contour_{config.state}"
    n = config.n[0]
    t_max = config.t_alpha_max

    def block(kappa0: float) -> list[tuple]:
        scenario = scenario_for(config, kappa0)
        samples = distance_samples(scenario, n, t_max)
        coherences = coherence_samples(scenario, t_max)
        rows = []
        for sample, coherence in zip(samples, coherences):
            rows.append((label, sample.t_alpha, kappa0, "delta", sample.delta))
            rows.append((label, coherence.t_alpha, kappa0, "coherence", coherence.value))
        return rows

    rows = [row for block_rows in _over_grid(config, block) for row in block_rows]
    tables = (Table(label, CONTOUR_HEADER, tuple(rows)),)
    return SweepResult(config, tables, time.perf_counter() - start)


def run_kappa_zero_scan(config: ExperimentConfig) -> SweepResult:
    """Unkicked disturbance at lag one: the bare even/odd alternation."""
    start = time.perf_counter()
    scenario = scenario_for(config, 0.0)
    samples = distance_samples(scenario, 1, config.t_alpha_max)
    rows = []
    for sample in samples:
        rows.append(("kappa_zero", sample.t_alpha, 0.0, "delta", sample.delta))
        rows.append(("kappa_zero", sample.t_alpha, 0.0, "hellinger", sample.hellinger))
    tables = (Table("kappa_zero", CONTOUR_HEADER, tuple(rows)),)
    return SweepResult(config, tables, time.perf_counter() - start)


def _pole_excursion(kappa0: float, start: ClassicalPoint, steps: int) -> float:
    pole = ClassicalPoint(0.0, math.copysign(1.0, start.y), 0.0)
    return max(p.distance_to(pole) for p in classical_orbit(start, kappa0, steps))


def divergence_onset() -> float | None:
    """First scanned kick strength whose near-pole orbit leaves the cap.

    The probe starts a hundredth off the pole, runs 200 steps, and counts
    as departed once any point sits further than 0.25 from the pole.
    """
    probe = ClassicalPoint(POLE_NUDGE_X, POLE_NUDGE_Y, 0.0)
    for kappa0 in DIVERGENCE_SCAN:
        if _pole_excursion(kappa0, probe, DIVERGENCE_STEPS) > DIVERGENCE_THRESHOLD:
            return kappa0
    return None


def run_classical(config: ExperimentConfig) -> SweepResult:
    """Classical-map diagnostics: indicator curve, boundaries, sample orbits."""
    start = time.perf_counter()
    plus_pole = ClassicalPoint(0.0, 1.0, 0.0)
    minus_pole = ClassicalPoint(0.0, -1.0, 0.0)
    cycle_start = ClassicalPoint(0.0, 0.0, 1.0)
    probe_plus = ClassicalPoint(POLE_NUDGE_X, POLE_NUDGE_Y, 0.0)
    probe_minus = ClassicalPoint(POLE_NUDGE_X, -POLE_NUDGE_Y, 0.0)

    def block(kappa0: float) -> list[tuple]:
        cycle = classical_orbit(cycle_start, kappa0, 4)
        return [
            ("classical", kappa0, "stability_indicator", cycle_stability_indicator(kappa0)),
            ("classical", kappa0, "cycle4_return_distance", cycle[4].distance_to(cycle_start)),
            ("classical", kappa0, "pole_plus_return_distance",
             classical_orbit(plus_pole, kappa0, 1)[1].distance_to(plus_pole)),
            ("classical", kappa0, "pole_minus_return_distance",
             classical_orbit(minus_pole, kappa0, 1)[1].distance_to(minus_pole)),
            ("classical", kappa0, "perturbed_pole_maxdist",
             _pole_excursion(kappa0, probe_plus, DIVERGENCE_STEPS)),
        ]

    rows = [row for block_rows in _over_grid(config, block) for row in block_rows]

    # The indicator is tangent to the threshold at zero kick; start the root
    # scan just above so only genuine crossings are reported.
    lo = config.kappa_min if config.kappa_min > 0 else 1e-3
    if lo < config.kappa_max:
        for boundary in stability_boundaries(lo, config.kappa_max):
            rows.append(("classical", boundary, "stability_boundary", boundary))
    onset = divergence_onset()
    if onset is not None:
        rows.append(("classical", onset, "fp_divergence_onset", onset))

    orbit_rows = []
    orbit_starts = (
        ("cycle4", cycle_start, 8),
        ("near_pole_plus", probe_plus, DIVERGENCE_STEPS),
        ("near_pole_minus", probe_minus, DIVERGENCE_STEPS),
    )
    for kappa0 in ORBIT_SAMPLE_KAPPAS:
        if not config.kappa_min <= kappa0 <= config.kappa_max:
            continue
        for name, orbit_start, steps in orbit_starts:
            for step, point in enumerate(classical_orbit(orbit_start, kappa0, steps)):
                orbit_rows.append(
                    ("classical", kappa0, name, step, point.x, point.y, point.z)
                )

    tables = (
        Table("classical", CLASSICAL_HEADER, tuple(rows)),
        Table("classical_orbits", ORBIT_HEADER, tuple(orbit_rows)),
    )
    return SweepResult(config, tables, time.perf_counter() - start)


RUNNERS = {
    "sweep-kappa": run_kappa_sweep,
    "contour": run_contour,
    "kappa-zero": run_kappa_zero_scan,
    "odd-n": run_odd_n,
    "classical": run_classical,
}


def _cell(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_tables(result: SweepResult, out_dir: str | Path) -> list[Path]:
    """Write each table as CSV plus a small run manifest; return the CSV paths.

    Floats are written with repr so equal runs give equal bytes and nothing
    is lost to formatting.
    """
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ConfigError(f"cannot create output directory {out}: {exc}") from None
    paths = []
    try:
        for table in result.tables:
            path = out / f"{table.name}.csv"
            with open(path, "w", newline="\n") as handle:
                handle.write(",".join(table.header) + "\n")
                for row in table.rows:
                    handle.write(",".join(_cell(v) for v in row) + "\n")
            paths.append(path)
        manifest = out / f"{result.tables[0].name}_manifest.txt"
        with open(manifest, "w", newline="\n") as handle:
            handle.write(_manifest_text(result))
    except OSError as exc:
        raise ConfigError(f"cannot write into {out}: {exc}") from None
    return paths


def _manifest_text(result: SweepResult) -> str:
    from . import __version__

    lines = [
        f"experiment: {result.config.experiment}",
        f"package version: {__version__}",
        f"python: {platform.python_version()}",
        f"numpy: {np.__version__}",
        f"wall time (s): {result.elapsed:.3f}",
    ]
    for field_name in (
        "j", "state", "axis", "T", "n", "kappa_min", "kappa_max",
        "kappa_step", "t_alpha_max", "threads", "out",
    ):
        lines.append(f"config {field_name}: {getattr(result.config, field_name)!r}")
    for table in result.tables:
        lines.append(f"rows {table.name}: {len(table.rows)}")
    return "\n".join(lines) + "\n"


def _sweep_delta_means(table: Table) -> dict[float, dict[int, float]]:
    kappa_col = table.header.index("kappa0")
    n_col = table.header.index("n")
    metric_col = table.header.index("metric")
    mean_col = table.header.index("mean")
    out: dict[float, dict[int, float]] = {}
    for row in table.rows:
        if row[metric_col] != "delta":
            continue
        out.setdefault(row[kappa_col], {})[row[n_col]] = row[mean_col]
    return out


def n_spread_summary(
    table: Table, kappa_lo: float, kappa_hi: float, relative: bool = False
) -> float:
    """Average over kick strengths in the window of the spread across n.

    The spread at one kick strength is max minus min of the averaged
    participation gain over the n values present; the relative form
    divides by the mean over n first.
    """
    by_kappa = _sweep_delta_means(table)
    spreads = []
    for kappa0 in sorted(by_kappa):
        if not kappa_lo <= kappa0 <= kappa_hi:
            continue
        values = list(by_kappa[kappa0].values())
        spread = max(values) - min(values)
        if relative:
            center = sum(values) / len(values)
            spread = spread / abs(center) if center else math.inf
        spreads.append(spread)
    if not spreads:
        raise ValueError(f"no grid points in [{kappa_lo}, {kappa_hi}]")
    return float(sum(spreads) / len(spreads))


def parity_contrast(table: Table, kappa_lo: float, kappa_hi: float) -> float:
    """Mean over odd t_alpha minus mean over even t_alpha of the contour values."""
    t_col = table.header.index("t_alpha")
    kappa_col = table.header.index("kappa0")
    metric_col = table.header.index("metric")
    value_col = table.header.index("value")
    odd, even = [], []
    for row in table.rows:
        if row[metric_col] != "delta":
            continue
        if not kappa_lo <= row[kappa_col] <= kappa_hi:
            continue
        (odd if row[t_col] % 2 else even).append(row[value_col])
    if not odd or not even:
        raise ValueError(f"no contour rows in [{kappa_lo}, {kappa_hi}]")
    return float(sum(odd) / len(odd) - sum(even) / len(even))
