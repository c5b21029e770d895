#!/usr/bin/env python3
"""Render three-row comparison figures from simulator trace files.

Single panel:

    python render_fig4.py --trace results/fig4a_trace.csv \
        --ideal results/fig4a_ideal.csv --out figures/fig4a.png

Batch over a results directory (pairs every *_trace.csv with its
*_ideal.csv and emits <label>.png per pair):

    python render_fig4.py --batch results/ --out figures/
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import matplotlib.pyplot as plt

from figtool import InputError, build_fig4_figure, read_trace


def render_one(trace_path, ideal_path, out_path, zoom: float) -> None:
    trace = read_trace(trace_path)
    ideal = read_trace(ideal_path)
    fig = build_fig4_figure(trace, ideal, zoom_fraction=zoom,
                            title=Path(trace_path).stem.replace("_trace", ""))
    Path(out_path).parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    print(f"wrote {out_path}")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trace", help="trace CSV")
    parser.add_argument("--ideal", help="matching friction-free ideal trace CSV")
    parser.add_argument("--batch", help="directory of *_trace.csv/*_ideal.csv pairs")
    parser.add_argument("--out", required=True, help="output image or directory")
    parser.add_argument("--zoom", type=float, default=0.2,
                        help="trailing fraction shown in the magnified row")
    args = parser.parse_args(argv)

    try:
        if args.batch:
            in_dir = Path(args.batch)
            out_dir = Path(args.out)
            pairs = []
            for trace_path in sorted(in_dir.glob("*_trace.csv")):
                ideal_path = in_dir / trace_path.name.replace("_trace.csv", "_ideal.csv")
                if ideal_path.exists():
                    pairs.append((trace_path, ideal_path))
            if not pairs:
                raise InputError(f"no trace/ideal pairs found in {in_dir}")
            for trace_path, ideal_path in pairs:
                label = trace_path.name.replace("_trace.csv", "")
                render_one(trace_path, ideal_path, out_dir / f"{label}.png", args.zoom)
        else:
            if not (args.trace and args.ideal):
                parser.error("need --trace and --ideal (or --batch)")
            render_one(args.trace, args.ideal, args.out, args.zoom)
    except InputError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
