"""Run every verification suite and print one summary line per suite.

    python3 scripts/run_suites.py --trials 200 --seed 0
"""

import argparse
import time

from bjortho.harness import SUITES, run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--tol", type=float, default=1e-7)
    args = ap.parse_args()
    for name in sorted(SUITES):
        start = time.perf_counter()
        rep = run_suite(name, seed=args.seed, trials=args.trials, tol=args.tol)
        flag = "ok " if rep.passed else "BAD"
        print(f"{flag} {name:22s} {rep.agreements:5d}/{rep.trials}  {time.perf_counter() - start:6.2f}s")
        for rec in rep.disagreements[:3]:
            print(f"      trial {rec['trial']}: {rec.get('reason', '')}")


if __name__ == "__main__":
    main()
