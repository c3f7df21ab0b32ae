#!/usr/bin/env python3
"""Regenerate the residue-class tables and diff them against the golden fixture."""

import argparse
import difflib
import sys
from pathlib import Path

from borwein.classify import render_appendix

ROOT = Path(__file__).resolve().parent.parent


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--golden", type=Path, default=ROOT / "fixtures" / "appendix_pnz.md")
    ap.add_argument("--out", type=Path, help="write the computed tables here")
    ap.add_argument("--t-max", type=int, default=24)
    args = ap.parse_args()

    ours = render_appendix(range(2, args.t_max + 1))
    if args.out:
        args.out.write_text(ours, encoding="utf-8")
    golden = args.golden.read_text(encoding="utf-8")
    diff = list(difflib.unified_diff(golden.splitlines(), ours.splitlines(),
                                     "golden", "computed", lineterm="", n=0))
    print("\n".join(diff) if diff else "identical")
    return 1 if diff else 0


if __name__ == "__main__":
    sys.exit(main())
