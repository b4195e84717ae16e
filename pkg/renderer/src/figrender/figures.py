"""FigureSpec and the renderer itself.

Three figure kinds. "lines" plots time-averaged sweep metrics against
kick strength, one curve per lag. "contour" pivots a point table into a
heatmap with first-measurement time across and kick strength up.
"scan" plots a point table taken at a single kick strength against
first-measurement time. Saving is the last step, so a failed render
leaves no output file behind.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .errors import DataError, SpecError
from .tables import Table, UnknownLayout, load_table

KINDS = ("lines", "contour", "scan")

METRIC_LABELS = {
    "hellinger": "Hellinger distance",
    "delta": "participation difference",
    "coherence": "l1 coherence",
}


def metric_label(metric: str) -> str:
    return METRIC_LABELS.get(metric, metric)


@dataclass(frozen=True)
class FigureSpec:
    """One output image: where it comes from and what it shows.

    `metric` may be None when every input holds exactly one metric.
    """

    name: str
    inputs: tuple[Path, ...]
    kind: str
    output: Path
    metric: str | None = None
    xlabel: str | None = None
    ylabel: str | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SpecError(
                f"figure {self.name}: unknown kind {self.kind!r}, "
                f"expected one of {', '.join(KINDS)}"
            )
        if not self.inputs:
            raise SpecError(f"figure {self.name}: no input files")
        if self.kind == "contour" and len(self.inputs) != 1:
            raise SpecError(
                f"figure {self.name}: contour takes exactly one input, "
                f"got {len(self.inputs)}"
            )


def _load_inputs(spec: FigureSpec) -> list[Table]:
    tables = []
    for path in spec.inputs:
        if not Path(path).exists():
            raise SpecError(f"figure {spec.name}: input does not exist: {path}")
        try:
            table = load_table(Path(path))
        except UnknownLayout:
            raise SpecError(
                f"figure {spec.name}: {path} has an unrecognized header"
            ) from None
        want = "sweep" if spec.kind == "lines" else "point"
        if table.layout != want:
            raise SpecError(
                f"figure {spec.name}: {path} is a {table.layout} table, "
                f"kind {spec.kind} needs {want}"
            )
        tables.append(table)
    return tables


def _resolve_metric(spec: FigureSpec, tables: list[Table]) -> str:
    present: list[str] = []
    for table in tables:
        for metric in table.metrics():
            if metric not in present:
                present.append(metric)
    if spec.metric is not None:
        if any(spec.metric not in t.metrics() for t in tables):
            raise SpecError(
                f"figure {spec.name}: metric {spec.metric!r} not present "
                f"in every input (available: {', '.join(present)})"
            )
        return spec.metric
    if len(present) == 1:
        return present[0]
    raise SpecError(
        f"figure {spec.name}: metric is ambiguous, pick one of "
        + ", ".join(present)
    )


def _draw_lines(ax, spec: FigureSpec, tables: list[Table], metric: str):
    for table in tables:
        prefix = f"{table.rows[0].scenario} " if len(tables) > 1 else ""
        by_n: dict[int, list] = {}
        for row in table.rows:
            if row.metric == metric:
                by_n.setdefault(row.n, []).append(row)
        for n in sorted(by_n):
            rows = sorted(by_n[n], key=lambda r: r.kappa0)
            ax.plot([r.kappa0 for r in rows], [r.mean for r in rows],
                    marker=".", label=f"{prefix}n = {n}")
    ax.set_xlabel(spec.xlabel or "kick strength")
    ax.set_ylabel(spec.ylabel or f"time-averaged {metric_label(metric)}")
    ax.legend()


def _draw_contour(fig, ax, spec: FigureSpec, table: Table, metric: str):
    rows = [r for r in table.rows if r.metric == metric]
    times = sorted({r.t_alpha for r in rows})
    kappas = sorted({r.kappa0 for r in rows})
    t_index = {t: i for i, t in enumerate(times)}
    k_index = {k: i for i, k in enumerate(kappas)}
    grid = np.full((len(kappas), len(times)), np.nan)
    for row in rows:
        i, j = k_index[row.kappa0], t_index[row.t_alpha]
        if not np.isnan(grid[i, j]):
            raise DataError(table.path, row.line,
                            f"duplicate cell t_alpha={row.t_alpha} "
                            f"kappa0={row.kappa0}")
        grid[i, j] = row.value
    if np.isnan(grid).any():
        i, j = map(int, np.argwhere(np.isnan(grid))[0])
        raise DataError(table.path, None,
                        f"grid cell missing at t_alpha={times[j]} "
                        f"kappa0={kappas[i]}")
    mesh = ax.pcolormesh(times, kappas, grid, shading="nearest")
    fig.colorbar(mesh, ax=ax, label=metric_label(metric))
    ax.set_xlabel(spec.xlabel or "first measurement time")
    ax.set_ylabel(spec.ylabel or "kick strength")


def _draw_scan(ax, spec: FigureSpec, tables: list[Table], metric: str):
    kappas = sorted({k for t in tables for k in t.kappa_values()})
    if len(kappas) != 1:
        raise SpecError(
            f"figure {spec.name}: scan needs a single kick strength, "
            f"found {len(kappas)} (use contour for a grid)"
        )
    for table in tables:
        rows = sorted((r for r in table.rows if r.metric == metric),
                      key=lambda r: r.t_alpha)
        label = table.rows[0].scenario if len(tables) > 1 else None
        ax.plot([r.t_alpha for r in rows], [r.value for r in rows],
                marker="o", label=label)
    if len(tables) > 1:
        ax.legend()
    ax.set_xlabel(spec.xlabel or "first measurement time")
    ax.set_ylabel(spec.ylabel
                  or f"{metric_label(metric)} at kick strength {kappas[0]:g}")


def render(spec: FigureSpec) -> Path:
    """Write the figure for `spec`, returning the output path.

    All inputs are loaded and checked before the canvas is touched;
    on error nothing is written.
    """
    tables = _load_inputs(spec)
    metric = _resolve_metric(spec, tables)
    fig, ax = plt.subplots(figsize=(6.4, 4.4), layout="constrained")
    try:
        if spec.kind == "lines":
            _draw_lines(ax, spec, tables, metric)
        elif spec.kind == "contour":
            _draw_contour(fig, ax, spec, tables[0], metric)
        else:
            _draw_scan(ax, spec, tables, metric)
        ax.set_title(spec.name)
        out = Path(spec.output)
        out.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(out)
    finally:
        plt.close(fig)
    return out
