"""Error types carrying the CLI exit code and, for data faults, the row."""
from __future__ import annotations


class RenderError(Exception):
    """Base class; `exit_code` is what the CLI returns for it."""

    exit_code = 1


class SpecError(RenderError):
    """A figure spec is unusable: bad kind, missing input, wrong schema."""

    exit_code = 1


class DataError(RenderError):
    """A CSV exists but cannot be plotted as-is.

    `row` is the 1-based line number in the file (header is row 1), or
    None for file-level faults such as an empty table.
    """

    exit_code = 2

    def __init__(self, path, row: int | None, message: str):
        self.path = path
        self.row = row
        where = f"{path} row {row}" if row is not None else str(path)
        super().__init__(f"{where}: {message}")
