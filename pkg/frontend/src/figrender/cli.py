"""Command line: figure id, dataset path(s), output image path."""

from __future__ import annotations

import argparse
import sys

from .render import known_figures, render
from .spec import FigureSpec, SchemaError


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="figrender",
        description="Render a figure from a cost-pipeline dataset "
                    "(CSV with a .schema.json sidecar next to it).")
    ap.add_argument("figure", help="figure id: " + ", ".join(known_figures()))
    ap.add_argument("csv", nargs="+",
                    help="dataset CSV path(s); overlays come after the "
                         "main dataset")
    ap.add_argument("out", help="output image path (.svg for vector output, "
                                "any raster extension otherwise)")
    ap.add_argument("--xscale", choices=("linear", "log"))
    ap.add_argument("--yscale", choices=("linear", "log"))
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    scales = {k: v for k, v in (("x", args.xscale), ("y", args.yscale))
              if v is not None}
    try:
        path = render(FigureSpec(args.figure, tuple(args.csv), args.out,
                                 scales))
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if path is not None:
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
