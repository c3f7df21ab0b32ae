"""borwein: command-line access to coefficients, sign tables, cutoffs and identity checks.

Data goes to stdout, progress to stderr.  Exit status is 0 iff every
requested verification passed; usage errors exit with 2.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import arith, asymptotics, classify, identities, qseries
from .bigfloat import DEFAULT_PRECISION, lower, upper

ENV_PREFIX = "BORWEIN_"
FORMATS = ("json", "csv", "markdown", "tsv")


@dataclass(frozen=True)
class Settings:
    precision: int = DEFAULT_PRECISION
    identity_order: int = identities.DEFAULT_ORDER
    jobs: int = 1


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"error: {ENV_PREFIX}{name}={raw!r} is not an integer")


def settings_from(args: argparse.Namespace) -> Settings:
    """Flags beat environment variables, which beat built-in defaults."""
    base = Settings(
        precision=_env_int("PRECISION", DEFAULT_PRECISION),
        identity_order=_env_int("IDENTITY_ORDER", identities.DEFAULT_ORDER),
        jobs=_env_int("JOBS", 1),
    )
    return Settings(
        precision=args.precision if args.precision is not None else base.precision,
        identity_order=getattr(args, "order", None) or base.identity_order,
        jobs=args.jobs if args.jobs is not None else base.jobs,
    )


def log(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


# -- output helpers -------------------------------------------------------------------

def emit_rows(header: list[str], rows: list[list], fmt: str) -> str:
    rows = [[str(x) for x in r] for r in rows]
    if fmt == "json":
        return json.dumps([dict(zip(header, r)) for r in rows], indent=1) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return buf.getvalue()
    if fmt == "tsv":
        return "".join("\t".join(r) + "\n" for r in rows)
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    lines += ["| " + " | ".join(r) + " |" for r in rows]
    return "\n".join(lines) + "\n"


def emit_series(s: qseries.IntegerSeries, fmt: str) -> str:
    return emit_rows(["n", "c"], [[n, c] for n, c in enumerate(s)], fmt)


def _parse_range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    if not sep:
        return range(int(lo), int(lo) + 1)
    return range(int(lo), int(hi) + 1)


# -- commands -------------------------------------------------------------------------

def cmd_coeffs(args, cfg: Settings) -> int:
    s = qseries.borwein_coeffs(args.t, args.m, args.n)
    sys.stdout.write(emit_series(s, args.format))
    return 0


def cmd_dissect(args, cfg: Settings) -> int:
    s = qseries.IntegerSeries.from_tsv(sys.stdin.read())
    sys.stdout.write(emit_series(qseries.dissect(s, args.step, args.r), args.format))
    return 0


def cmd_alpha(args, cfg: Settings) -> int:
    residues = range(args.t) if args.r is None else [args.r]
    rows = []
    for r in residues:
        a = arith.alpha(args.t, args.m, r)
        enc = a.enclosure(cfg.precision)
        rows.append([r, arith.alpha_sign(args.t, args.m, r).name,
                     "0" if a.is_zero() else _nstr((lower(enc) + upper(enc)) / 2), " ".join(map(str, a.coeffs))])
    sys.stdout.write(emit_rows(["r", "sign", "value", "cyclotomic_coeffs"], rows, args.format))
    return 0


def _nstr(x) -> str:
    import mpmath
    return mpmath.nstr(x, 20)


def _table_for(t: int, m: int, exceptional: bool) -> classify.SignTable:
    if exceptional:
        return classify.exceptional_set(t, m)
    return classify.sign_table(t, m)


def cmd_classify(args, cfg: Settings) -> int:
    if args.m * (args.t - 1) > 24 and not args.no_exceptional:
        raise SystemExit("error: exceptional sets need m(t-1) <= 24 (use --no-exceptional)")
    if not args.no_exceptional:
        log(f"computing cutoff and exceptional set for t={args.t}, m={args.m}")
    tb = _table_for(args.t, args.m, not args.no_exceptional)
    if args.format == "markdown":
        sys.stdout.write(classify.render_table([tb], not args.no_exceptional))
    else:
        sys.stdout.write(json.dumps(tb.to_dict(), indent=1, sort_keys=True) + "\n")
    return 0


def _render_one(job: tuple[int, bool]) -> str:
    t, exc = job
    return classify.render_appendix([t], exc)


def cmd_tables(args, cfg: Settings) -> int:
    ts = list(_parse_range(args.t_range))
    exc = not args.no_exceptional
    if args.format == "json":
        out = []
        for t in ts:
            log(f"t = {t}")
            if exc and classify.is_prime(t):
                out += [tb.to_dict() for tb in classify.exceptional_sets(t)]
            else:
                out += [classify.sign_table(t, m).to_dict() for m in asymptotics.admissible_m(t)]
        sys.stdout.write(json.dumps(out, indent=1, sort_keys=True) + "\n")
        return 0
    jobs = [(t, exc) for t in ts]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            blocks = list(pool.map(_render_one, jobs))
    else:
        blocks = []
        for job in jobs:
            log(f"t = {job[0]}")
            blocks.append(_render_one(job))
    sys.stdout.write("\n".join(blocks))
    return 0


def cmd_bound(args, cfg: Settings) -> int:
    c_min = None
    if args.c_min is not None:
        from fractions import Fraction
        v = Fraction(args.c_min)
        c_min = {m: v for m in asymptotics.admissible_m(args.t)}
    log(f"certifying B({args.t})")
    cert = asymptotics.bound_certificate(args.t, c_min, window=args.window, prec=cfg.precision)
    rec = dict(t=cert.t, B=cert.B, per_m={str(k): v for k, v in cert.per_m.items()},
               window=cert.window, window_ok=cert.window_ok,
               c_min={str(k): (None if v is None else _nstr(v.value if hasattr(v, "value") else v))
                      for k, v in cert.c_min.items()})
    if args.format == "json":
        sys.stdout.write(json.dumps(rec, indent=1, sort_keys=True) + "\n")
    else:
        rows = [[m, b] for m, b in cert.per_m.items()] + [["max", cert.B]]
        sys.stdout.write(emit_rows(["m", "B"], rows, args.format))
    return 0 if cert.window_ok else 1


def _verify_one(job: tuple[str, int]) -> identities.IdentityResult:
    ident, order = job
    return identities.run_registry(order, ids={ident})[0]


def cmd_verify_identities(args, cfg: Settings) -> int:
    order = max(cfg.identity_order, 100)
    jobs = [(i, order) for i in identities.REGISTRY]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            results = list(pool.map(_verify_one, jobs))
    else:
        results = []
        for job in jobs:
            log(job[0])
            results.append(_verify_one(job))
    if args.format == "json":
        sys.stdout.write(json.dumps([r.to_dict() for r in results], indent=1) + "\n")
    else:
        for r in results:
            status = "ok" if r.ok else f"FAIL at q^{r.first_mismatch}"
            sys.stdout.write(f"{r.id:40s} order {r.order:5d}  {status}\n")
    return 0 if all(r.ok for r in results) else 1


def cmd_zero_check(args, cfg: Settings) -> int:
    rep = classify.zero_residue_check(args.t, args.m, args.n)
    if args.format == "json":
        sys.stdout.write(json.dumps(rep.to_dict(), indent=1) + "\n")
    else:
        sys.stdout.write(f"t={rep.t} m={rep.m} Z={classify.format_set(rep.Z)} "
                         f"N={rep.N_check} special={rep.special_case or '-'}\n")
        for n, c in rep.known_exceptions:
            sys.stdout.write(f"known exception c({n}) = {c}\n")
        for n, c, why in rep.failures:
            sys.stdout.write(f"FAIL c({n}) = {c}: {why}\n")
        sys.stdout.write("ok\n" if rep.ok else "failed\n")
    return 0 if rep.ok else 1


# -- parser ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="borwein", description=__doc__.splitlines()[0])
    p.add_argument("--precision", type=int, default=None,
                   help=f"working precision in bits (env {ENV_PREFIX}PRECISION, default {DEFAULT_PRECISION})")
    p.add_argument("--jobs", type=int, default=None,
                   help=f"worker processes for tables / verify-identities (env {ENV_PREFIX}JOBS)")
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp, default):
        sp.add_argument("--format", choices=FORMATS, default=default)

    sp = sub.add_parser("coeffs", help="coefficients c_t^(m)(0..n)")
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    fmt(sp, "tsv")
    sp.set_defaults(func=cmd_coeffs)

    sp = sub.add_parser("dissect", help="read an n<TAB>c series on stdin, emit terms step*n + r")
    sp.add_argument("step", type=int)
    sp.add_argument("r", type=int)
    fmt(sp, "tsv")
    sp.set_defaults(func=cmd_dissect)

    sp = sub.add_parser("alpha", help="exact alpha_t^(m)(r) and its sign")
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--r", type=int, default=None)
    fmt(sp, "tsv")
    sp.set_defaults(func=cmd_alpha)

    sp = sub.add_parser("classify", help="sign table for one (t, m)")
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--no-exceptional", action="store_true")
    fmt(sp, "json")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("tables", help="residue tables for a range of t, e.g. 2..24")
    sp.add_argument("--t-range", default="2..24")
    sp.add_argument("--no-exceptional", action="store_true")
    fmt(sp, "markdown")
    sp.set_defaults(func=cmd_tables)

    sp = sub.add_parser("bound", help="certified cutoff B(t)")
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--c-min", default=None, help="override the |alpha| lower bound, e.g. 1/10")
    sp.add_argument("--window", type=int, default=asymptotics.VERIFICATION_WINDOW)
    fmt(sp, "json")
    sp.set_defaults(func=cmd_bound)

    sp = sub.add_parser("verify-identities", help="run the identity registry")
    sp.add_argument("--order", type=int, default=None,
                    help=f"minimum order (env {ENV_PREFIX}IDENTITY_ORDER, default {identities.DEFAULT_ORDER})")
    sp.add_argument("--format", choices=("json", "text"), default="text")
    sp.set_defaults(func=cmd_verify_identities)

    sp = sub.add_parser("zero-check", help="vanishing on zero classes up to --n")
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, default=2000)
    sp.add_argument("--format", choices=("json", "text"), default="text")
    sp.set_defaults(func=cmd_zero_check)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = settings_from(args)
    try:
        return args.func(args, cfg)
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
