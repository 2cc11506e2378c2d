#!/usr/bin/env python3
"""Run the default verification experiment and write summary + CSV.

Equivalent to `aluthge verify` with no config file; kept as a script so the
full sweep can be launched, resumed in spirit, and inspected without
remembering CLI flags.

    python scripts/run_default_experiment.py --out summary.json --csv slack.csv
"""

import argparse
import os
import sys

from aluthge.harness import ExperimentConfig, run, write_slack_csv, write_summary


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="summary.json")
    parser.add_argument("--csv", default="slack_quantiles.csv")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--trials", type=int, default=500, help="trials per cell")
    parser.add_argument("--workers", type=int, default=os.cpu_count())
    parser.add_argument(
        "--variant", choices=("corrected", "as_stated"), default="corrected"
    )
    args = parser.parse_args()

    config = ExperimentConfig(
        trials_per_cell=args.trials, base_seed=args.seed, variant=args.variant
    )
    summary = run(config, workers=args.workers)
    write_summary(args.out, summary)
    write_slack_csv(args.csv, summary)
    print(
        f"{summary.total_trials} trials, "
        f"{sum(r['count'] for r in summary.per_id.values())} reports, "
        f"{summary.failure_count} failures, "
        f"{summary.wall_time_seconds:.0f}s",
        file=sys.stderr,
    )
    print(f"summary -> {args.out}; slack quantiles -> {args.csv}", file=sys.stderr)
    return 1 if summary.corrected_failures() else 0


if __name__ == "__main__":
    sys.exit(main())
