#!/usr/bin/env python3
"""Regenerate the full artifact catalog: coordinate tables for k = 2..9,
derived identities with numeric certification, and the warm-up example.

Writes everything under --out (default ./out).
"""

import argparse
import sys

from dzeta import cli


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="out")
    parser.add_argument("--k-max", type=int, default=9)
    parser.add_argument("--digits", type=int, default=12)
    args = parser.parse_args()

    steps = [
        ["toy", "--out", args.out],
        ["tau", "--k", "2", "--k-max", str(args.k_max), "--m", "1,2",
         "--out", args.out],
        ["derive", "--k", "2", "--k-max", str(args.k_max), "--m", "1,2",
         "--digits", str(args.digits), "--out", args.out],
    ]
    for step in steps:
        print(f"$ dzeta {' '.join(step)}")
        code = cli.main(step)
        if code != 0:
            return code
    return 0


if __name__ == "__main__":
    sys.exit(main())
