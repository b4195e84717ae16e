"""Command-line front end: batch runs to CSV, plus the self-check suite.

Exit codes: 0 success, 1 configuration problem, 2 numerical-integrity
failure, 3 self-check failure.
"""
from __future__ import annotations

import argparse
import sys

from .config import ALLOWED_KEYS, EXPERIMENTS, STATES, AXES, build_config, load_config_file
from .errors import ConfigError, NumericalIntegrityError
from .experiments import RUNNERS, write_tables
from .verify import run_suite

__all__ = ["main"]


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage, which this tool reserves
    # for numerical failures; surface usage problems as config errors instead.
    def error(self, message: str) -> None:
        raise ConfigError(message)


def _parse_n(raw: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in raw.split(",") if p.strip())
    except ValueError:
        raise ConfigError(f"--n expects comma-separated integers, got {raw!r}") from None


_FLAGS = {
    "j": dict(type=float, help="spin size (half-integer)"),
    "state": dict(choices=STATES, help="initial coherent-state axis; minus prefix for the opposite pole"),
    "axis": dict(choices=AXES, help="measurement axis for both measurements (default z)"),
    "T": dict(type=int, help="averaging window length"),
    "n": dict(type=_parse_n, metavar="N[,N...]", help="lags between the measurements"),
    "kappa_min": dict(type=float, help="start of the kick-strength grid"),
    "kappa_max": dict(type=float, help="end of the kick-strength grid"),
    "kappa_step": dict(type=float, help="kick-strength grid step"),
    "t_alpha_max": dict(type=int, help="largest first-measurement time"),
    "threads": dict(type=int, help="worker threads over grid points"),
    "out": dict(help="output directory for CSV files"),
}


def _build_parser() -> _Parser:
    parser = _Parser(prog="kickedtop", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in EXPERIMENTS:
        sp = sub.add_parser(name, help=f"run the {name} experiment")
        sp.add_argument("--config", help="INI file with per-experiment sections")
        for key in sorted(ALLOWED_KEYS[name]):
            flag = "--" + key.replace("_", "-") if key != "T" else "--T"
            sp.add_argument(flag, dest=key, default=None, **_FLAGS[key])
    sub.add_parser("verify", help="run the algebraic self-check suite")
    return parser


def _run(argv: list[str] | None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "verify":
        report = run_suite()
        for line in report.format_lines():
            print(line)
        return 0 if report.all_passed else 3
    sections = load_config_file(args.config) if args.config else {}
    overrides = {
        key: getattr(args, key)
        for key in ALLOWED_KEYS[args.command]
        if getattr(args, key) is not None
    }
    config = build_config(args.command, sections.get(args.command), overrides)
    result = RUNNERS[args.command](config)
    paths = write_tables(result, config.out)
    for table, path in zip(result.tables, paths):
        print(f"wrote {path} ({len(table.rows)} rows)")
    print(f"finished {config.experiment} in {result.elapsed:.2f} s")
    return 0


def main(argv: list[str] | None = None) -> int:
    try:
        return _run(argv)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except NumericalIntegrityError as exc:
        print(f"numerical integrity failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
