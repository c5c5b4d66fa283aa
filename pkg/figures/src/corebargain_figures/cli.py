"""CLI: render one figure from an experiment output directory.

    corebargain-render --dir DIR --fig <alloc-mean|alloc-var|err-mean|err-var> --out FILE
"""

from __future__ import annotations

import argparse
import sys

from .render import FIGURE_IDS, FigureSpec, SchemaError, render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="corebargain-render",
        description="Render a line plot from a bargaining experiment's aggregate.csv",
    )
    parser.add_argument("--dir", required=True, help="experiment output directory")
    parser.add_argument("--fig", required=True, choices=FIGURE_IDS)
    parser.add_argument("--out", required=True, help="image file to write")
    args = parser.parse_args(argv)
    try:
        path, curves = render(FigureSpec(args.dir, args.fig, args.out))
    except (SchemaError, FileNotFoundError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    print(f"wrote {path} ({len(curves)} curves)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
