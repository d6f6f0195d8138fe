"""Command-line interface mirroring FigureSpec."""

from __future__ import annotations

import argparse
import sys

from regretplots.figures import FigureSpec, MissingColumnError, NoDataError, plot


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="regret-plots",
        description="render figures from graphbandit experiment CSV files",
    )
    parser.add_argument("--kind", required=True,
                        choices=("regret_curve", "alpha_scaling", "horizon_scaling"))
    parser.add_argument("--input", action="append", required=True, metavar="CSV",
                        help="input CSV (repeatable)")
    parser.add_argument("--out", required=True, help="output image path (.png or .svg)")
    parser.add_argument("--x-column", default=None,
                        help="x column for scaling plots (default per kind)")
    parser.add_argument("--overlay-exponent", type=float, default=None)
    parser.add_argument("--overlay-coefficient", type=float, default=None,
                        help="fixed overlay coefficient (default: least-squares fit)")
    parser.add_argument("--label", action="append", default=[],
                        help="legend label per input (repeatable)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    spec = FigureSpec(
        inputs=tuple(args.input),
        kind=args.kind,
        output=args.out,
        x_column=args.x_column,
        overlay_exponent=args.overlay_exponent,
        overlay_coefficient=args.overlay_coefficient,
        labels=tuple(args.label),
    )
    try:
        path = plot(spec)
    except (MissingColumnError, NoDataError, FileNotFoundError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
