#!/usr/bin/env python3
"""Exceptional sets for every admissible m and a range of t, with the certified cutoff."""

import argparse
import json
import sys
import time
from pathlib import Path

from borwein.classify import exceptional_sets, format_set, is_prime

ROOT = Path(__file__).resolve().parent.parent


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--t", type=int, nargs="+", default=[2, 3, 5, 7, 11, 13, 17, 19, 23])
    ap.add_argument("--golden", type=Path, default=ROOT / "fixtures" / "exceptional_sets.json")
    ap.add_argument("--json", action="store_true", help="emit JSON instead of a table")
    args = ap.parse_args()

    golden = json.loads(args.golden.read_text()) if args.golden.exists() else {}
    rows, mismatches = [], 0
    for t in args.t:
        t0 = time.perf_counter()
        for tb in exceptional_sets(t):
            key = f"{t},{tb.m}"
            want = golden.get(key) if is_prime(t) else None
            same = want is None or tuple(want) == tb.E
            mismatches += not same
            rows.append(dict(t=t, m=tb.m, B=tb.B, E=list(tb.E), derived=tb.E_derived,
                             golden=want, match=same))
        print(f"t={t}: {time.perf_counter() - t0:.1f}s", file=sys.stderr)
    if args.json:
        print(json.dumps(rows, indent=1))
    else:
        for r in rows:
            flag = "" if r["match"] else f"   golden {format_set(r['golden'])}"
            tag = " (derived)" if r["derived"] else ""
            print(f"t={r['t']:2d} m={r['m']:2d} B={r['B']:6d} E={format_set(r['E'])}{tag}{flag}")
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
