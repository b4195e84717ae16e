"""Figure discovery over a results directory.

Walks the CSVs a simulation run leaves behind and builds one FigureSpec
per (table, metric). The kind follows from the data, not the filename:
sweep tables become line figures; point tables become a scan when they
sit at a single kick strength and a contour otherwise. Files with other
headers (classical tables, orbit dumps) are skipped; a recognized file
that fails to parse stops the scan with its row named.
"""
from __future__ import annotations

from pathlib import Path

from .errors import SpecError
from .figures import FigureSpec
from .tables import Table, UnknownLayout, load_table


def _kind_for(table: Table) -> str:
    if table.layout == "sweep":
        return "lines"
    return "scan" if len(table.kappa_values()) == 1 else "contour"


def discover(results_dir: Path, out_dir: Path,
             suffix: str = ".pdf") -> tuple[FigureSpec, ...]:
    results_dir = Path(results_dir)
    if not results_dir.is_dir():
        raise SpecError(f"not a directory: {results_dir}")
    specs = []
    for path in sorted(results_dir.glob("*.csv")):
        try:
            table = load_table(path)
        except UnknownLayout:
            continue
        for metric in table.metrics():
            name = f"{path.stem}_{metric}"
            specs.append(FigureSpec(
                name=name,
                inputs=(path,),
                kind=_kind_for(table),
                metric=metric,
                output=Path(out_dir) / f"{name}{suffix}",
            ))
    if not specs:
        raise SpecError(f"no renderable CSV tables in {results_dir}")
    return tuple(specs)
