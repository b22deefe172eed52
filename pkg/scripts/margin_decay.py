#!/usr/bin/env python3
"""Decay rate of the dominance margin w_n - classical_n along a geometric n grid.

Prints the log-log slope between consecutive sample points, which estimates
the exponent p in margin ~ n^p.
"""

import argparse
import math

from copson.core.rational import parse_rational
from copson.sequences import make_family
from copson.weights import weight_value


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--family", default="unit")
    ap.add_argument("--alpha", default="0")
    ap.add_argument("--decades", type=int, default=6)
    ap.add_argument("--precision", type=int, default=256)
    args = ap.parse_args()

    alpha = parse_rational(args.alpha)
    ns = [10**k for k in range(args.decades + 1)]
    seq = make_family(args.family, ns[-1])
    prev = None
    print(f"{'n':>10} {'margin':>14} {'slope':>8}")
    for n in ns:
        m = float(weight_value(seq, alpha, n, args.precision).margin)
        slope = "" if prev is None else f"{math.log(m / prev[1]) / math.log(n / prev[0]):8.4f}"
        print(f"{n:>10} {m:14.6e} {slope:>8}")
        prev = (n, m)


if __name__ == "__main__":
    main()
