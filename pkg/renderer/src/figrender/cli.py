"""Command line front end: render --spec <ini> or render --auto <dir>.

A spec file is an INI document, one section per figure:

    [delta_vs_kick]
    inputs = results/sweep_kappa_z.csv
    kind = lines
    metric = delta
    output = figures/delta_vs_kick.pdf

`inputs` takes a comma-separated list; paths are resolved relative to
the spec file. `metric`, `xlabel`, `ylabel`, and `output` are optional
(`output` defaults to the section name inside --out).
"""
from __future__ import annotations

import argparse
import configparser
import sys
from pathlib import Path

from .auto import discover
from .errors import RenderError, SpecError
from .figures import KINDS, FigureSpec, render

_KEYS = {"inputs", "kind", "metric", "xlabel", "ylabel", "output"}


def load_spec_file(path: Path, out_dir: Path,
                   suffix: str = ".pdf") -> tuple[FigureSpec, ...]:
    path = Path(path)
    if not path.is_file():
        raise SpecError(f"spec file does not exist: {path}")
    parser = configparser.ConfigParser()
    parser.optionxform = str
    try:
        with open(path) as handle:
            parser.read_file(handle)
    except configparser.Error as err:
        raise SpecError(f"{path}: {err}") from None
    if not parser.sections():
        raise SpecError(f"{path}: no figure sections")
    base = path.parent
    specs = []
    for section in parser.sections():
        items = dict(parser.items(section))
        unknown = set(items) - _KEYS
        if unknown:
            raise SpecError(
                f"{path} [{section}]: unknown keys {', '.join(sorted(unknown))}"
            )
        for key in ("inputs", "kind"):
            if key not in items:
                raise SpecError(f"{path} [{section}]: missing key {key}")
        if items["kind"] not in KINDS:
            raise SpecError(
                f"{path} [{section}]: kind must be one of {', '.join(KINDS)}"
            )
        inputs = tuple(base / part.strip()
                       for part in items["inputs"].split(",") if part.strip())
        output = (base / items["output"] if "output" in items
                  else Path(out_dir) / f"{section}{suffix}")
        specs.append(FigureSpec(
            name=section,
            inputs=inputs,
            kind=items["kind"],
            metric=items.get("metric"),
            xlabel=items.get("xlabel"),
            ylabel=items.get("ylabel"),
            output=output,
        ))
    return tuple(specs)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="render",
        description="Render simulation CSV tables to figure files.",
    )
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--spec", metavar="FILE",
                        help="INI spec file, one section per figure")
    source.add_argument("--auto", metavar="DIR",
                        help="render every recognized CSV in a results directory")
    parser.add_argument("--out", metavar="DIR", default="figures",
                        help="output directory for default-named figures")
    parser.add_argument("--raster", action="store_true",
                        help="write PNG instead of the default vector PDF")
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
        suffix = ".png" if args.raster else ".pdf"
        if args.auto:
            specs = discover(Path(args.auto), Path(args.out), suffix)
        else:
            specs = load_spec_file(Path(args.spec), Path(args.out), suffix)
        for spec in specs:
            print(f"wrote {render(spec)}")
    except RenderError as err:
        print(f"render error: {err}", file=sys.stderr)
        return err.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
