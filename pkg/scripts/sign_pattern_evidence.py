#!/usr/bin/env python3
"""Closed-form sign predictions against exact coefficients, beyond m(t-1) <= 24.

For (p, 1) and (p, 3) the script also lists the indices the closed form
leaves open, which is where any disagreement would have to hide.
"""

import argparse
import sys

from borwein.classify import NOT_APPLICABLE, closed_form_mismatches, is_prime, predict_sign_closed_form
from borwein.qseries import borwein_coeffs


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p-max", type=int, default=31)
    ap.add_argument("--n", type=int, default=3000)
    ap.add_argument("--m", type=int, nargs="+", default=[1, 3])
    ap.add_argument("--show-open", action="store_true", help="print sign of c(n) where no prediction applies")
    args = ap.parse_args()

    total = 0
    for p in (q for q in range(3, args.p_max + 1) if is_prime(q)):
        for m in args.m:
            bad = closed_form_mismatches(p, m, args.n)
            total += len(bad)
            note = "" if m * (p - 1) <= 24 else "  (outside m(t-1) <= 24)"
            print(f"p={p:3d} m={m}: {len(bad)} mismatches{note}")
            for n, c, pred in bad[:5]:
                print(f"    n={n} c={c} predicted {pred}")
            if args.show_open:
                c = borwein_coeffs(p, m, args.n)
                open_ = [(n, (c[n] > 0) - (c[n] < 0)) for n in range(args.n + 1)
                         if predict_sign_closed_form(p, m, n) is NOT_APPLICABLE]
                print(f"    open indices: {open_}")
    return 1 if total else 0


if __name__ == "__main__":
    sys.exit(main())
