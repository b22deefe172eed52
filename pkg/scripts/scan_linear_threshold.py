#!/usr/bin/env python3
"""Locate where pointwise dominance first fails for q_n = n on a grid of alphas.

This is exploratory: a finite ``nmax`` can only show failure, never prove
dominance for all n.
"""

import argparse

from copson.certify import scan_alpha
from copson.core.rational import parse_rational
from copson.sequences import make_family


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--family", default="linear")
    ap.add_argument("--lo", default="0")
    ap.add_argument("--hi", default="1/2")
    ap.add_argument("--steps", type=int, default=26)
    ap.add_argument("--nmax", type=int, default=300)
    args = ap.parse_args()

    seq = make_family(args.family, args.nmax)
    rep = scan_alpha(seq, parse_rational(args.lo), parse_rational(args.hi), args.steps, args.nmax)
    for a, v in zip(rep.grid, rep.verdicts):
        print(f"alpha={str(a):>8}  {v.state.value:<11} witness={v.witness}")
    print("boundary bracket:", rep.to_json()["boundary_bracket"])


if __name__ == "__main__":
    main()
