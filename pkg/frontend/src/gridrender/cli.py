"""render INPUT.csv OUTPUT.png [--level L]"""

from __future__ import annotations

import argparse
import sys

from .io import GridFormatError, parse_grid
from .plot import render


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="render",
        description="Render an x,y,logabs CSV grid as a contour image.")
    ap.add_argument("input", help="grid CSV path")
    ap.add_argument("output", help="image path (.png, .svg, .pdf, ...)")
    ap.add_argument("--level", type=float, default=None,
                    help="draw this level set emphasized")
    ap.add_argument("--dpi", type=int, default=150)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        grid = parse_grid(args.input)
        render(grid, args.output, highlight_level=args.level, dpi=args.dpi)
    except (GridFormatError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
