#!/usr/bin/env python3
"""Render a sweep summary (value vs metric) as a log-x line chart.

    python render_sweep.py results/tikhonov_summary.csv --out figures/sweep.png
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import matplotlib.pyplot as plt

from figtool import InputError, build_sweep_figure, read_summary


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("summary", help="sweep summary CSV")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--x", default=None, help="value column (default: L or value)")
    parser.add_argument("--y", default="tracking_error", help="metric column")
    args = parser.parse_args(argv)

    try:
        rows = read_summary(args.summary)
        x_key = args.x or ("L" if "L" in rows[0] else "value")
        fig = build_sweep_figure(rows, x_key, args.y, title=Path(args.summary).stem)
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(args.out, dpi=150)
        plt.close(fig)
        print(f"wrote {args.out}")
    except InputError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
