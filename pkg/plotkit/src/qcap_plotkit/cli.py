"""Command line entry point: qcap-plot."""

from __future__ import annotations

import argparse
import sys

from .render import X_AXES, PARAMETER_LABEL, PlotSpec, render_region


def _parse_range(text: str):
    parts = text.split(":")
    if len(parts) != 2:
        raise ValueError(f"range must look like 'low:high', got {text!r}")
    lo, hi = (float(p) for p in parts)
    if not lo < hi:
        raise ValueError(f"range must satisfy low < high, got {text!r}")
    return (lo, hi)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcap-plot",
        description="Draw super-additivity region boundaries from scan CSV files.",
    )
    parser.add_argument("--points", help="points.csv from a scan, for cell shading")
    parser.add_argument(
        "--boundaries",
        action="append",
        required=True,
        help="boundaries.csv from a scan; repeat the flag to pool several scans",
    )
    parser.add_argument("--out", required=True, help="output image path (.svg or .png)")
    parser.add_argument("--family", required=True, choices=sorted(PARAMETER_LABEL))
    parser.add_argument("--d", type=int, help="channel dimension (required with --x-axis mu_max)")
    parser.add_argument("--x-axis", choices=X_AXES, default="mu_max")
    parser.add_argument("--x-range", help="x axis limits as 'low:high'")
    parser.add_argument("--y-range", help="y axis limits as 'low:high'")
    parser.add_argument("--title", help="figure title override")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = PlotSpec(
            boundaries_csvs=tuple(args.boundaries),
            out=args.out,
            family=args.family,
            d=args.d,
            points_csv=args.points,
            x_axis=args.x_axis,
            x_range=_parse_range(args.x_range) if args.x_range else None,
            y_range=_parse_range(args.y_range) if args.y_range else None,
            title=args.title,
        )
        out = render_region(spec)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
