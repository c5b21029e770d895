#!/usr/bin/env python3
"""Reproduce the full single-link simulation study into an output directory.

Runs the six-panel observer-comparison grid, the stuck-mass example, the
tracking gain sweep, and the analytic verification suites:

    python scripts/reproduce_study.py --out results/
"""

import argparse
import sys

from fricobs import cli


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="results", help="output directory")
    args = parser.parse_args()

    targets = ["fig4a", "fig4b", "fig4c", "fig4d", "fig4e", "fig4f",
               "motivating", "tikhonov"]
    for target in targets:
        print(f"=== run {target}")
        rc = cli.main(["run", target, "--out", args.out])
        if rc != 0:
            return rc
    print("=== verify")
    return cli.main(["verify", "--out", args.out])


if __name__ == "__main__":
    sys.exit(main())
