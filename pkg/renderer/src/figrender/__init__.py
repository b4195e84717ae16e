"""Figure renderer for the kicked-top simulator's CSV tables.

Read-only over its inputs: it loads the sweep and point tables the
simulator CLI writes and turns each (table, metric) pair into one
figure file. See `figrender.cli` for the command line.
"""
from __future__ import annotations

from .auto import discover
from .errors import DataError, RenderError, SpecError
from .figures import KINDS, FigureSpec, metric_label, render
from .tables import (POINT_FIELDS, SWEEP_FIELDS, PointRow, SweepRow, Table,
                     UnknownLayout, load_table)

__version__ = "0.1.0"

__all__ = [
    "DataError",
    "FigureSpec",
    "KINDS",
    "POINT_FIELDS",
    "PointRow",
    "RenderError",
    "SWEEP_FIELDS",
    "SpecError",
    "SweepRow",
    "Table",
    "UnknownLayout",
    "discover",
    "load_table",
    "metric_label",
    "render",
    "__version__",
]
