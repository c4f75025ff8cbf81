"""Command line entry point.

    plotsuite render --kind training_curves --in runs/curves_optimistic.csv --out fig.png

Exit codes: 0 success, 2 usage error (argparse), 3 bad input
(missing file, schema mismatch, empty CSV).
"""

from __future__ import annotations

import argparse
import sys

from .figures import KINDS, SMOOTHING_WINDOW, FigureSpec, render
from .schemas import EmptyInputError, SchemaError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plotsuite",
        description="Render publication figures from experiment export files.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_render = sub.add_parser("render", help="render one figure")
    p_render.add_argument("--kind", required=True, choices=KINDS,
                          help="figure kind")
    p_render.add_argument("--in", dest="inputs", action="append", required=True,
                          metavar="FILE",
                          help="input export file; repeat for multi-panel figures")
    p_render.add_argument("--out", required=True, metavar="FILE",
                          help="output image path (.png, .svg, or .pdf)")
    p_render.add_argument("--window", type=int, default=SMOOTHING_WINDOW,
                          help="moving-average window for training curves "
                               f"(default {SMOOTHING_WINDOW})")
    p_render.set_defaults(func=cmd_render)
    return parser


def cmd_render(args: argparse.Namespace) -> int:
    try:
        spec = FigureSpec(kind=args.kind, inputs=tuple(args.inputs),
                          output=args.out, smoothing_window=args.window)
        out = render(spec)
    except (SchemaError, EmptyInputError, FileNotFoundError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 3
    print(out)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
