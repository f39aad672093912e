#!/usr/bin/env python3
"""Run the full comparison protocol on the four fixture pairs.

Equivalent to `gridsched bench --fixtures --runs 100` with an output
directory; prints the mean/stddev/time/relative tables and leaves runs.csv
and traces.csv behind for plotting.
"""

import argparse
import sys

from gridsched.cli import main as gridsched_main


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--runs", type=int, default=100)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--algos", default="all")
    parser.add_argument("--out", default="bench_results")
    args = parser.parse_args()
    return gridsched_main(
        [
            "bench",
            "--fixtures",
            "--algos",
            args.algos,
            "--runs",
            str(args.runs),
            "--seed",
            str(args.seed),
            "--out",
            args.out,
        ]
    )


if __name__ == "__main__":
    sys.exit(main())
