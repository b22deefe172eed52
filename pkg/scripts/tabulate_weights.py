#!/usr/bin/env python3
"""Print improved vs classical weights and their ratio for one family."""

import argparse
import csv
import sys

from copson.core.rational import parse_rational
from copson.sequences import make_family
from copson.weights import weight_value


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--family", default="unit", help="unit | linear | cubic | power:<p> | table:<file>")
    ap.add_argument("--alpha", default="1/2")
    ap.add_argument("--n-max", type=int, default=20)
    ap.add_argument("--precision", type=int, default=128)
    args = ap.parse_args()

    alpha = parse_rational(args.alpha)
    seq = make_family(args.family, args.n_max)
    out = csv.writer(sys.stdout)
    out.writerow(["n", "improved", "classical", "ratio", "margin_lo"])
    for n in range(1, args.n_max + 1):
        wv = weight_value(seq, alpha, n, args.precision)
        out.writerow(
            [n, f"{float(wv.value):.10g}", f"{float(wv.classical):.10g}",
             f"{float(wv.value) / float(wv.classical):.8f}", wv.margin.decimal_bounds()[0]]
        )


if __name__ == "__main__":
    main()
