#!/usr/bin/env python3
"""Reproduce the figure data for both stock scenarios.

Writes CSV files, gnuplot scripts and residual summaries under the chosen
output directory (default ./out):

    out/one_mode/fig03.csv ... fig06b.csv
    out/measurement_sequence/fig07.csv ... fig12.csv

Render any figure with e.g. ``gnuplot -p out/one_mode/fig05.gp``.
"""

import argparse
import sys

from dcobserver import ScenarioConfig, run_measurement_sequence, run_one_mode


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="out", help="output directory (default ./out)")
    parser.add_argument("--dt", type=float, default=0.01, help="grid step (default 0.01)")
    args = parser.parse_args()

    failures = 0
    for name, runner in [
        ("one_mode", run_one_mode),
        ("measurement_sequence", run_measurement_sequence),
    ]:
        config = ScenarioConfig.from_dict(
            {"scenario": name, "out_dir": args.out_dir, "dt": args.dt}
        )
        bundle = runner(config)
        status = "ok" if bundle.passed else "RESIDUAL CHECK FAILED"
        print(f"{name}: {status}")
        for check, passed in sorted(bundle.summary["checks"].items()):
            print(f"  {'pass' if passed else 'FAIL'}  {check}")
        print(f"  files under {bundle.out_dir}")
        failures += 0 if bundle.passed else 1
    return 2 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
