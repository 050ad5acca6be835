#!/usr/bin/env python3
"""Desk-scale demo of the evaluation methodology: all built-in agents,
shared seeds, ten repeats per seed, every match mirrored, results exported.

Usage: python3 scripts/run_demo_tournament.py [--version 1.5] [--seeds 3]
       [--workers 4] [--out demo-results]
"""

import argparse
import sys

from locm.model import RulesetConfig
from locm.tournament import (aggregate, build_schedule, export, format_table,
                             run_schedule)


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--version", default="1.5",
                        choices=["1.0", "1.2", "1.5"])
    parser.add_argument("--seeds", type=int, default=3)
    parser.add_argument("--repeats", type=int, default=10)
    parser.add_argument("--workers", type=int, default=4)
    parser.add_argument("--master-seed", type=int, default=0)
    parser.add_argument("--out", default="demo-results")
    args = parser.parse_args()

    if args.version == "1.5":
        agents = ["greedy", "random2lanes", "random"]
    else:
        agents = ["baseline1", "baseline2", "greedy", "random"]
    config = RulesetConfig.for_version(args.version)
    specs = build_schedule(agents, seeds=args.seeds, repeats=args.repeats,
                           config=config, master_seed=args.master_seed)
    print(f"{len(specs)} matches ({len(agents)} agents, {args.seeds} seeds, "
          f"{args.repeats} repeats, mirrored), {args.workers} workers")
    results = run_schedule(specs, workers=args.workers)
    table = aggregate(results)
    paths = export(results, table, args.out)
    print(format_table(table))
    print(f"raw: {paths['raw']}")
    print(f"transcripts: {paths.get('transcripts', '-')}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
