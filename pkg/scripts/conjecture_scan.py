#!/usr/bin/env python3
"""Scan the coefficient-recursion conjecture against the direct solver.

The direct fraction-free solve is the oracle; any mismatch would be a
finding, not a bug, provided the direct pipeline's residual checks pass.
Prints per-k timings so the cost crossover between the two paths is visible.
"""

import argparse
import sys
import time

from dzeta import tausolver


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--k-max", type=int, default=15)
    parser.add_argument("--m", default="1,2")
    args = parser.parse_args()

    ok = True
    t0 = time.perf_counter()
    for m in (int(piece) for piece in args.m.split(",")):
        report = tausolver.check_conjecture(args.k_max, m)
        for line in report.lines():
            print(line)
        ok = ok and report.all_pass
    print(f"total {time.perf_counter() - t0:.1f}s; "
          + ("all comparisons match" if ok else "MISMATCH FOUND"))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
