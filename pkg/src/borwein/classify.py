"""Sign classification of c_t^(m)(n): residue sets, exceptional sets, periods.

The residue sets come from the exact sign of alpha; everything at or below
the cutoff B is read off exact integer coefficients, and everything above B
is covered by the Delta certificate of :mod:`borwein.asymptotics`.
"""

from __future__ import annotations

import enum
import json
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Iterable

from .arith import Sign, alpha_sign
from .asymptotics import admissible_m, find_B
from .qseries import IntegerSeries, borwein_coeffs, borwein_powers

PRIMES_BELOW_24 = (2, 3, 5, 7, 11, 13, 17, 19, 23)

SPECIAL_CASES = {(3, 9): "SC1", (4, 4): "SC2", (5, 5): "SC3"}

# (period, {residue mod period: required sign}) on the zero classes
SPECIAL_PATTERNS = {
    (3, 9): (9, {0: 1, 3: -1, 6: 0}),
    (4, 4): (8, {0: 1, 2: 1, 4: -1, 6: -1}),
    (5, 5): (25, {0: 1, 5: -1, 10: -1, 15: 0, 20: 0}),
}

SPECIAL_NOTES = {
    "SC1": "SC1: c_3^(9)(9n) > 0, c_3^(9)(9n+3) < 0, c_3^(9)(9n+6) = 0.",
    "SC2": "SC2: c_4^(4)(8n+r) > 0 for r in {0,2}, c_4^(4)(8n+r) < 0 for r in {4,6}.",
    "SC3": "SC3: c_5^(5)(25n) > 0, c_5^(5)(25n+r) < 0 for r in {5,10}, "
           "c_5^(5)(25n+r) = 0 for r in {15,20}.",
}

# isolated nonzero values on zero classes, as (t, m) -> {n: c(n)}
KNOWN_EXCEPTIONS = {(4, 8): {1: -8}, (9, 3): {1: -3}}


def sgn(x: int) -> int:
    return (x > 0) - (x < 0)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# -- residue sets ------------------------------------------------------------------

def pnz_sets(t: int, m: int) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    if t < 1:
        raise ValueError("t must be positive")
    signs = [alpha_sign(t, m, r) for r in range(t)]
    P = tuple(r for r, s in enumerate(signs) if s is Sign.POSITIVE)
    N = tuple(r for r, s in enumerate(signs) if s is Sign.NEGATIVE)
    Z = tuple(r for r, s in enumerate(signs) if s is Sign.ZERO)
    return P, N, Z


def pentagonal_zero_residues(t: int) -> frozenset[int]:
    """Residues mod t missed by every j(3j+1)/2; j mod 2t covers all integers j."""
    if t < 1:
        raise ValueError("t must be positive")
    hit = {j * (3 * j + 1) // 2 % t for j in range(2 * t)}
    return frozenset(set(range(t)) - hit)


def triangular_zero_residues(t: int) -> frozenset[int]:
    """Residues mod t missed by every j(j+1)/2."""
    if t < 1:
        raise ValueError("t must be positive")
    hit = {j * (j + 1) // 2 % t for j in range(2 * t)}
    return frozenset(set(range(t)) - hit)


# -- tables ----------------------------------------------------------------------

@dataclass(frozen=True)
class SignTable:
    t: int
    m: int
    P: tuple[int, ...]
    N: tuple[int, ...]
    Z: tuple[int, ...]
    E: tuple[int, ...] | None = None
    B: int | None = None
    ups_period: int | None = None
    special_case: str | None = None
    E_derived: bool = False

    def __post_init__(self):
        cells = list(self.P) + list(self.N) + list(self.Z)
        if sorted(cells) != list(range(self.t)):
            raise ValueError(f"P, N, Z do not partition the residues mod {self.t}")

    def to_dict(self) -> dict:
        d = asdict(self)
        for k in ("P", "N", "Z", "E"):
            if d[k] is not None:
                d[k] = list(d[k])
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def markdown_row(self, with_exceptional: bool = False) -> str:
        z = format_set(self.Z)
        if self.special_case:
            z += f" ({self.special_case})"
        cells = [str(self.m), format_set(self.P), format_set(self.N), z]
        if with_exceptional:
            cells.append("" if self.E is None else format_set(self.E))
        return "| " + " | ".join(cells) + " |"


def format_set(s: Iterable[int] | None) -> str:
    s = sorted(s or ())
    return "{" + ",".join(map(str, s)) + "}" if s else "∅"


def sign_table(t: int, m: int) -> SignTable:
    """Residue sets only (no cutoff, no exceptional set)."""
    P, N, Z = pnz_sets(t, m)
    return SignTable(t, m, P, N, Z, special_case=SPECIAL_CASES.get((t, m)))


def render_table(tables: list[SignTable], with_exceptional: bool = False) -> str:
    t = tables[0].t
    head = ["m", "P", "N", "Z"] + (["E"] if with_exceptional else [])
    lines = [f"### t = {t}", "",
             "| " + " | ".join(head) + " |",
             "|" + "---|" * len(head)]
    lines += [tb.markdown_row(with_exceptional) for tb in tables]
    notes = [SPECIAL_NOTES[tb.special_case] for tb in tables if tb.special_case]
    if notes:
        lines += [""] + notes
    return "\n".join(lines) + "\n"


def render_appendix(t_values: Iterable[int], with_exceptional: bool = False,
                    progress=None) -> str:
    """Markdown tables for each t; exceptional sets are filled in for prime t only."""
    blocks = []
    for t in t_values:
        if progress:
            progress(f"t = {t}")
        if with_exceptional and is_prime(t):
            tables = exceptional_sets(t)
        else:
            tables = [sign_table(t, m) for m in admissible_m(t)]
        blocks.append(render_table(tables, with_exceptional and is_prime(t)))
    return "\n".join(blocks)


# -- exceptional sets --------------------------------------------------------------

@lru_cache(maxsize=None)
def cutoff(t: int) -> int:
    return find_B(t)


def _exceptional(t: int, m: int, coeffs: IntegerSeries, B: int) -> tuple[int, ...]:
    signs = {r: int(alpha_sign(t, m, r)) for r in range(t)}
    return tuple(n for n in range(B + 1)
                 if signs[n % t] and sgn(coeffs[n]) != signs[n % t])


def exceptional_set(t: int, m: int, B: int | None = None) -> SignTable:
    """Full sign table with the complete exceptional set.

    For n > B the certified cutoff guarantees sgn c(n) = sgn alpha(n), so only
    n <= B is scanned, with exact coefficients.
    """
    if m * (t - 1) > 24:
        raise ValueError(f"m(t-1) = {m * (t - 1)} exceeds 24")
    B = cutoff(t) if B is None else B
    coeffs = borwein_coeffs(t, m, B)
    return _complete(t, m, coeffs, B)


def _complete(t: int, m: int, coeffs: IntegerSeries, B: int) -> SignTable:
    P, N, Z = pnz_sets(t, m)
    return SignTable(t, m, P, N, Z, E=_exceptional(t, m, coeffs, B), B=B,
                     ups_period=ups_period(t, m), special_case=SPECIAL_CASES.get((t, m)),
                     E_derived=not is_prime(t))


def exceptional_sets(t: int, B: int | None = None) -> list[SignTable]:
    """All admissible m at once, sharing one incremental pass over the powers."""
    B = cutoff(t) if B is None else B
    ms = admissible_m(t)
    return [_complete(t, m, c, B) for m, c in borwein_powers(t, B, ms[-1])]


# -- vanishing on zero classes -------------------------------------------------------

@dataclass
class ZeroCheckReport:
    t: int
    m: int
    N_check: int
    Z: tuple[int, ...]
    special_case: str | None
    known_exceptions: list[tuple[int, int]] = field(default_factory=list)
    failures: list[tuple[int, int, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        d = asdict(self)
        d["ok"] = self.ok
        d["known_exceptions"] = [[n, str(c)] for n, c in self.known_exceptions]
        d["failures"] = [[n, str(c), why] for n, c, why in self.failures]
        return d


def zero_residue_check(t: int, m: int, N_check: int = 2000,
                       coeffs: IntegerSeries | None = None) -> ZeroCheckReport:
    """Check c(n) = 0 on every zero class (or the refined special pattern) for n <= N_check."""
    if m * (t - 1) > 24:
        raise ValueError(f"m(t-1) = {m * (t - 1)} exceeds 24")
    _, _, Z = pnz_sets(t, m)
    c = coeffs if coeffs is not None else borwein_coeffs(t, m, N_check)
    rep = ZeroCheckReport(t, m, N_check, Z, SPECIAL_CASES.get((t, m)))
    allowed = KNOWN_EXCEPTIONS.get((t, m), {})
    pattern = SPECIAL_PATTERNS.get((t, m))
    zs = set(Z)
    for n in range(N_check + 1):
        if n % t not in zs:
            continue
        v = c[n]
        if pattern:
            period, want = pattern
            expected = want[n % period]
            if sgn(v) != expected:
                rep.failures.append((n, v, f"expected sign {expected} on {n % period} mod {period}"))
        elif v:
            if allowed.get(n) == v:
                rep.known_exceptions.append((n, v))
            else:
                rep.failures.append((n, v, "nonzero on a zero class"))
    for n, v in allowed.items():
        if n <= N_check and (n, v) not in rep.known_exceptions:
            rep.failures.append((n, c[n], f"expected exception {v} not found"))
    return rep


# -- least period of sign ----------------------------------------------------------

def ups_period(t: int, m: int) -> int:
    return SPECIAL_PATTERNS[(t, m)][0] if (t, m) in SPECIAL_PATTERNS else t


@dataclass(frozen=True)
class UpsReport:
    period: int
    window: tuple[int, int]
    is_period: bool
    minimal: bool
    surviving_divisors: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return self.is_period and self.minimal


def _is_sign_period(c: IntegerSeries, d: int, lo: int, hi: int) -> bool:
    return all(sgn(c[n]) == sgn(c[n + d]) for n in range(lo, hi + 1))


def ups_check(t: int, m: int, B: int | None = None) -> UpsReport:
    """Check the claimed period and its minimality on (B, B + 10t]."""
    P = ups_period(t, m)
    B = cutoff(t) if B is None else B
    lo, hi = B + 1, B + 10 * t
    c = borwein_coeffs(t, m, hi + P)
    survivors = tuple(d for d in range(1, P) if P % d == 0 and _is_sign_period(c, d, lo, hi))
    return UpsReport(P, (lo, hi), _is_sign_period(c, P, lo, hi), not survivors, survivors)


def ups_verdict(t: int, m: int) -> int:
    """Least period of sign: 9, 8, 25 for the special cases and t otherwise."""
    if m * (t - 1) > 24:
        raise ValueError(f"m(t-1) = {m * (t - 1)} exceeds 24")
    return ups_period(t, m)


# -- closed-form sign predictions ------------------------------------------------------

class _NotApplicable(enum.Enum):
    NOT_APPLICABLE = "not applicable"

    def __repr__(self) -> str:
        return "NOT_APPLICABLE"


NOT_APPLICABLE = _NotApplicable.NOT_APPLICABLE


def _pent(j: int) -> int:
    return j * (3 * j + 1) // 2


def predict_sign_closed_form(t: int, m: int, n: int):
    """Sign of c_t^(m)(n) from the closed-form rules, or NOT_APPLICABLE.

    * t = 2: positive on even n, negative on odd n, except c_2^(1)(2) = 0.
    * (p, 1): zero off the residues j(3j+1)/2, |j| <= (p-1)/2.  On a hit
      residue the representative j* with the smallest j(3j+1)/2 decides:
      sign (-1)^j* once n >= 2p + j*(3j*+1)/2, zero below j*(3j*+1)/2.
    * (p, 3): zero off the residues j(j+1)/2, 0 <= j <= (p-1)/2; sign (-1)^j
      from n >= j(j+1)/2 on, zero below.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if t == 2:
        if (m, n) == (1, 2):
            return Sign.ZERO
        return Sign.POSITIVE if n % 2 == 0 else Sign.NEGATIVE
    if not (is_prime(t) and t > 2 and m in (1, 3)):
        return NOT_APPLICABLE
    p = t
    if m == 1:
        hits = [j for j in range((1 - p) // 2, (p - 1) // 2 + 1) if (_pent(j) - n) % p == 0]
        if not hits:
            return Sign.ZERO
        j = min(hits, key=_pent)
        if n < _pent(j):
            return Sign.ZERO
        if n >= 2 * p + _pent(j):
            return Sign((-1) ** (j % 2))
        return NOT_APPLICABLE
    hits = [j for j in range((p - 1) // 2 + 1) if (j * (j + 1) // 2 - n) % p == 0]
    if not hits:
        return Sign.ZERO
    j = hits[0]
    if n < j * (j + 1) // 2:
        return Sign.ZERO
    return Sign((-1) ** (j % 2))


def closed_form_mismatches(t: int, m: int, N: int) -> list[tuple[int, int, object]]:
    """(n, c(n), prediction) wherever an applicable prediction disagrees."""
    c = borwein_coeffs(t, m, N)
    out = []
    for n in range(N + 1):
        pred = predict_sign_closed_form(t, m, n)
        if pred is NOT_APPLICABLE:
            continue
        if sgn(c[n]) != int(pred):
            out.append((n, c[n], pred))
    return out
