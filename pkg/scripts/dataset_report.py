#!/usr/bin/env python3
"""Full analysis pipeline for a simplicial dataset: per-order statistics plus
the whole ranking comparison (heatmap + top-K curves) over the uplift-project,
per-order, and composition-based methods.

Usage:
    python scripts/dataset_report.py --input data/tags-ask-ubuntu --out-dir out/
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from hyperrank.cli import main as cli_main

DEFAULT_METHODS = "u2,u3,u4,u5,h2,h3,h4,h5,a3,a4,a5"


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--input", required=True,
                        help="dataset prefix or directory")
    parser.add_argument("--out-dir", default="out")
    parser.add_argument("--methods", default=DEFAULT_METHODS)
    parser.add_argument("--tol", type=float, default=1e-8)
    parser.add_argument("--direct", action="store_true",
                        help="use the direct solver convention instead of the "
                             "aux-gauge one")
    args = parser.parse_args()

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    code = cli_main(["stats", "--input", args.input,
                     "--out", str(out_dir / "stats.csv")])
    if code != 0:
        return code

    compare_args = [
        "compare", "--methods", args.methods, "--input", args.input,
        "--out-dir", str(out_dir), "--tol", str(args.tol), "--lcc",
    ]
    if not args.direct:
        compare_args.append("--aux-gauge")
    return cli_main(compare_args)


if __name__ == "__main__":
    sys.exit(main())
