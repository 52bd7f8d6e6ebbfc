#!/usr/bin/env python3
"""Run every verification sweep at full acceptance budgets and summarise.

Equivalent to the CLI `fockpath verify ...` invocations, collected in one
place; exits nonzero if any sweep reports a failure.
"""

import argparse
import json
import sys
import time

from fockpath import sweeps


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--cache", help="oracle cache directory")
    parser.add_argument("--json", action="store_true")
    args = parser.parse_args()

    budgets = ((2, 12), (3, 10), (4, 9))
    runs = [
        ("formula", lambda: sweeps.run_formula_sweep(
            sweeps.FormulaSweepConfig(budgets=budgets, cache_dir=args.cache))),
        ("branching", lambda: sweeps.run_branching_sweep(
            sweeps.BranchingSweepConfig(budgets=budgets, cache_dir=args.cache))),
        ("bijection", lambda: sweeps.run_bijection_sweep(
            sweeps.BijectionSweepConfig(max_positions=8, samples=10000,
                                        sample_positions=12, seed=2011))),
        ("construction", lambda: sweeps.run_construction_sweep(
            sweeps.ConstructionSweepConfig(max_positions=8))),
        ("consistency", lambda: sweeps.run_consistency_sweep(
            sweeps.ConsistencySweepConfig(e_values=(2, 3), max_n=10))),
    ]

    all_ok = True
    results = []
    for name, runner in runs:
        start = time.time()
        report = runner()
        elapsed = round(time.time() - start, 1)
        all_ok &= report.ok
        results.append(report.to_json() | {"seconds": elapsed})
        if not args.json:
            status = "ok" if report.ok else "FAILED"
            print(f"{name:>12}: {status} ({report.checked} checks, {elapsed}s)")
            for failure in report.failures[:10]:
                print(f"    {failure}")
    if args.json:
        print(json.dumps(results, sort_keys=True))
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())
