"""Rendering front end.

    catops-plots render_all <csv_dir> <out_dir>
    catops-plots render fig6 <csv_dir> <out_dir>

Exit codes: 0 all requested figures rendered, 1 some inputs missing,
2 schema error or unknown figure.
"""

from __future__ import annotations

import argparse
import sys

from .render import FigureSpec, render, render_all
from .schema import FIGURES, SchemaError


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="catops-plots")
    sub = parser.add_subparsers(dest="command", required=True)

    p_all = sub.add_parser("render_all", help="render every figure with inputs present")
    p_all.add_argument("csv_dir")
    p_all.add_argument("out_dir")

    p_one = sub.add_parser("render", help="render named figures")
    p_one.add_argument("figures", nargs="+", metavar="fig",
                       help=f"one of {', '.join(sorted(FIGURES))}")
    p_one.add_argument("csv_dir")
    p_one.add_argument("out_dir")

    args = parser.parse_args(argv)
    try:
        if args.command == "render_all":
            _, missing = render_all(args.csv_dir, args.out_dir)
            return 1 if missing else 0
        for figure_id in args.figures:
            spec = FigureSpec.from_dir(figure_id, args.csv_dir, args.out_dir)
            print(f"{figure_id}: wrote {render(spec)}")
        return 0
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
