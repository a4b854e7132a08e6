"""Command-line scenario runner.

Exit codes: 0 all residual checks passed, 1 validation failure, 2 a residual
or convergence check failed, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .scenarios import (
    EXIT_IO,
    EXIT_OK,
    EXIT_RESIDUAL,
    EXIT_VALIDATION,
    SCENARIOS,
    ConfigError,
    ScenarioConfig,
    run_scenario,
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dcobserver",
        description=(
            "Simulate direct-coupled observers for closed linear quantum systems "
            "and emit figure CSVs, gnuplot scripts and a residual summary."
        ),
    )
    parser.add_argument("--scenario", choices=SCENARIOS, help="scenario to run")
    parser.add_argument("--config", type=Path, help="JSON config file (flags override it)")
    parser.add_argument("--t-end", dest="t_end", type=float, help="simulation horizon")
    parser.add_argument("--dt", type=float, help="grid step")
    parser.add_argument("--out-dir", dest="out_dir", type=Path, help="output directory")
    parser.add_argument("--tol", type=float, help="residual tolerance for pass/fail gates")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    raw: dict = {}
    if args.config is not None:
        try:
            text = args.config.read_text()
        except OSError as exc:
            print(f"error: cannot read config file: {exc}", file=sys.stderr)
            return EXIT_IO
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            print(f"error: config is not valid JSON: {exc}", file=sys.stderr)
            return EXIT_VALIDATION
        if not isinstance(raw, dict):
            print("error: config must be a JSON object", file=sys.stderr)
            return EXIT_VALIDATION
    if args.scenario is not None:
        raw["scenario"] = args.scenario
    if args.t_end is not None:
        raw["t_end"] = args.t_end
    if args.dt is not None:
        raw["dt"] = args.dt
    if args.out_dir is not None:
        raw["out_dir"] = str(args.out_dir)
    if args.tol is not None:
        raw["tol"] = args.tol
    if "scenario" not in raw:
        print("error: no scenario given (use --scenario or the config file)", file=sys.stderr)
        return EXIT_VALIDATION

    try:
        config = ScenarioConfig.from_dict(raw)
        bundle = run_scenario(config)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"error: I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO

    checks = bundle.summary["checks"]
    for name, ok in sorted(checks.items()):
        print(f"{'pass' if ok else 'FAIL'}  {name}")
    print(f"wrote {len(bundle.csv_files)} csv files to {bundle.out_dir}")
    print(f"summary: {bundle.summary_file}")
    return EXIT_OK if bundle.passed else EXIT_RESIDUAL


if __name__ == "__main__":
    raise SystemExit(main())
