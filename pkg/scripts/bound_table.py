#!/usr/bin/env python3
"""Certified cutoffs B(t), per m, next to the published values for prime t."""

import argparse
import sys
import time
from fractions import Fraction

from borwein.asymptotics import admissible_m, bound_certificate

PUBLISHED = {2: 250, 3: 300, 5: 460, 7: 540, 11: 1910, 13: 3430, 17: 7000, 19: 10450, 23: 21650}


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--t", type=int, nargs="+", default=sorted(PUBLISHED))
    ap.add_argument("--c-min", type=Fraction, default=None,
                    help="uniform |alpha| lower bound instead of the certified per-m minimum")
    ap.add_argument("--window", type=int, default=500)
    args = ap.parse_args()

    ok = True
    print("t\tB\tpublished\twindow_ok\tper_m\tseconds")
    for t in args.t:
        t0 = time.perf_counter()
        cm = None if args.c_min is None else {m: args.c_min for m in admissible_m(t)}
        cert = bound_certificate(t, cm, window=args.window)
        pub = PUBLISHED.get(t, "-")
        ok &= cert.window_ok and (pub == "-" or cert.B <= pub)
        print(f"{t}\t{cert.B}\t{pub}\t{cert.window_ok}\t{cert.per_m}\t{time.perf_counter() - t0:.1f}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
