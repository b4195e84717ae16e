"""Loading and validating the two CSV layouts the simulator emits.

Sweep tables hold time-averaged metrics, one row per (kick strength,
lag, metric). Point tables hold single values over (first measurement
time, kick strength). Anything else is reported as an unknown layout so
directory scans can skip it, while a recognized file that fails to parse
is an error naming the exact row.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

from .errors import DataError

SWEEP_FIELDS = ("scenario", "state", "axis", "j", "kappa0", "n", "T",
                "metric", "mean", "second_moment")
POINT_FIELDS = ("scenario", "t_alpha", "kappa0", "metric", "value")


class UnknownLayout(Exception):
    """Header matches neither known table layout."""


@dataclass(frozen=True)
class SweepRow:
    line: int
    scenario: str
    kappa0: float
    n: int
    metric: str
    mean: float


@dataclass(frozen=True)
class PointRow:
    line: int
    scenario: str
    t_alpha: int
    kappa0: float
    metric: str
    value: float


@dataclass(frozen=True)
class Table:
    path: Path
    layout: str  # "sweep" or "point"
    rows: tuple[SweepRow, ...] | tuple[PointRow, ...]

    def metrics(self) -> tuple[str, ...]:
        seen: list[str] = []
        for row in self.rows:
            if row.metric not in seen:
                seen.append(row.metric)
        return tuple(seen)

    def kappa_values(self) -> tuple[float, ...]:
        return tuple(sorted({row.kappa0 for row in self.rows}))


def _number(path: Path, line: int, field: str, raw: str, cast):
    try:
        return cast(raw)
    except ValueError:
        raise DataError(path, line, f"{field} is not a number: {raw!r}") from None


def _sweep_row(path: Path, line: int, rec: list[str]) -> SweepRow:
    return SweepRow(
        line=line,
        scenario=rec[0],
        kappa0=_number(path, line, "kappa0", rec[4], float),
        n=_number(path, line, "n", rec[5], int),
        metric=rec[7],
        mean=_number(path, line, "mean", rec[8], float),
    )


def _point_row(path: Path, line: int, rec: list[str]) -> PointRow:
    return PointRow(
        line=line,
        scenario=rec[0],
        t_alpha=_number(path, line, "t_alpha", rec[1], int),
        kappa0=_number(path, line, "kappa0", rec[2], float),
        metric=rec[3],
        value=_number(path, line, "value", rec[4], float),
    )


def load_table(path: Path) -> Table:
    """Parse a CSV into a Table, or raise.

    Raises UnknownLayout if the header is not one the simulator writes,
    DataError (with the row number) for anything wrong below the header.
    """
    path = Path(path)
    with open(path, newline="") as handle:
        records = list(csv.reader(handle))
    if not records:
        raise DataError(path, None, "file is empty")
    header = tuple(records[0])
    if header == SWEEP_FIELDS:
        layout, parse = "sweep", _sweep_row
    elif header == POINT_FIELDS:
        layout, parse = "point", _point_row
    else:
        raise UnknownLayout(str(path))
    want = len(header)
    rows = []
    for index, rec in enumerate(records[1:], start=2):
        if len(rec) != want:
            raise DataError(path, index,
                            f"expected {want} fields, got {len(rec)}")
        rows.append(parse(path, index, rec))
    if not rows:
        raise DataError(path, None, "no data rows")
    return Table(path=path, layout=layout, rows=tuple(rows))
