"""Command line front end: render --in sweep.csv --out fig.png --title ..."""

from __future__ import annotations

import argparse
import sys

import matplotlib.pyplot as plt

from .reading import CsvFormatError
from .render import PlotJob, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="render",
        description="Draw an error-bar fidelity figure from a sweep CSV",
    )
    parser.add_argument("--in", dest="input_csv", required=True, help="sweep CSV path")
    parser.add_argument(
        "--out", dest="output_path", required=True,
        help="output image (.png/.jpg writes an .svg sibling, .svg/.pdf a .png one)",
    )
    parser.add_argument("--title", default="", help="figure title")
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        job = PlotJob(
            input_csv=args.input_csv,
            output_path=args.output_path,
            title=args.title,
        )
        fig, written = render(job)
        plt.close(fig)
    except (CsvFormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print("wrote " + " and ".join(str(p) for p in written))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
