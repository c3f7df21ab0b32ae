"""Certified main term, explicit error majorant and the dominance cutoff B(t).

For c_t^(m)(n) with m(t-1) <= 24 and mu = m(t-1)/24,

    c(n) = (2 pi sqrt(mu) / t) (n-mu)^(-1/2) alpha(n) I_{-1}(4 pi sqrt(mu(n-mu)) / t) + E(n),
    |E(n)| <= Ebar(n).

Every quantity here is an ``mpmath.iv`` enclosure or a one-sided
:class:`BigFloat`; a sign is only claimed from an interval that excludes 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath
from mpmath import iv, libmp

from .arith import Sign, alpha, alpha_abs_lower_bound
from .bigfloat import (
    DEFAULT_PRECISION,
    MAX_PRECISION,
    BigFloat,
    Rounding,
    interval_precision,
    interval_sign,
    lower,
    to_interval,
    upper,
)

VERIFICATION_WINDOW = 500


class OutOfRange(ValueError):
    """Raised when (t, m, n) falls outside the hypotheses of the estimate."""


# -- modified Bessel function ---------------------------------------------------------

def bessel_I(s: int, x, prec: int = DEFAULT_PRECISION):
    """Enclosure of I_s(x) for integer s and x >= 0.

    Sums the ascending series sum_k (x/2)^(2k+s) / (k! (k+s)!) and closes it
    with the geometric tail bound 2 * (first omitted term), valid once the
    term ratio (x/2)^2 / ((k+1)(k+s+1)) has dropped below 1/2.
    """
    s = abs(int(s))
    with interval_precision(prec + 20):
        x = to_interval(x)
        if lower(x) < 0:
            raise ValueError("bessel_I needs x >= 0")
        half = x / 2
        half2 = half * half
        term = half ** s / math.factorial(s) if s else iv.mpf(1)
        total = iv.mpf(0)
        eps = mpmath.mpf(2) ** (-prec - 8)
        h2_hi = upper(half2)
        k = 0
        while True:
            total += term
            den = (k + 1) * (k + s + 1)
            nxt = term * half2 / den
            # ratio h2/den < 1/2, checked on the exact integer side
            if 2 * h2_hi < den and upper(nxt) <= eps * lower(total):
                total += iv.mpf([0, upper(2 * nxt)])
                break
            term = nxt
            k += 1
    with interval_precision(prec):
        return +total


def bessel_I_quadrature(s: int, x, dps: int = 30) -> mpmath.mpf:
    """I_s(x) = (1/pi) int_0^pi exp(x cos th) cos(s th) dth, by numerical quadrature.

    Non-rigorous; used only as an independent cross-check of :func:`bessel_I`.
    """
    with mpmath.workdps(dps):
        x = mpmath.mpf(x)
        f = lambda th: mpmath.exp(x * mpmath.cos(th)) * mpmath.cos(s * th)
        return mpmath.quad(f, [0, mpmath.pi / 2, mpmath.pi]) / mpmath.pi


# -- constants ---------------------------------------------------------------------

def admissible_m(t: int) -> range:
    """m with m(t-1) <= 24."""
    if t < 2:
        raise OutOfRange("t must be at least 2")
    return range(1, 24 // (t - 1) + 1)


@dataclass(frozen=True)
class AsymptoticConstants:
    t: int
    m: int
    mu: Fraction
    A: Fraction
    M_squared: Fraction
    M: BigFloat
    growth_main: BigFloat
    growth_error: BigFloat

    def check(self) -> None:
        # the error exponent sqrt(6) pi M / 3 stays below 4 pi sqrt(mu) / t
        if not self.M_squared < 24 * self.mu / (self.t * self.t):
            raise ArithmeticError(f"growth gap fails for t={self.t}, m={self.m}")


@lru_cache(maxsize=None)
def constants(t: int, m: int) -> AsymptoticConstants:
    if t < 2 or m < 1:
        raise OutOfRange(f"need t >= 2 and m >= 1, got t={t}, m={m}")
    if m * (t - 1) > 24:
        raise OutOfRange(f"m(t-1) = {m * (t - 1)} exceeds 24")
    mu = Fraction(m * (t - 1), 24)
    big = [ell for ell in range(1, t + 1) if math.gcd(t, ell) ** 2 > t]
    A = Fraction(max(t // math.gcd(t, ell) for ell in big))
    cands = [Fraction(m * (t - 1), 4 * t * t)]
    cands += [Fraction(m * (math.gcd(t, ell) ** 2 - t), t * ell * ell) for ell in big if ell < t]
    M2 = max(cands)
    with interval_precision(DEFAULT_PRECISION):
        M_iv = iv.sqrt(to_interval(M2))
        main = 4 * iv.pi * iv.sqrt(to_interval(mu)) / t
        err = iv.sqrt(6) * iv.pi * M_iv / 3
    c = AsymptoticConstants(
        t=t, m=m, mu=mu, A=A, M_squared=M2,
        M=BigFloat.upper_of(M_iv),
        growth_main=BigFloat.lower_of(main),
        growth_error=BigFloat.upper_of(err),
    )
    c.check()
    return c


# -- main term and error majorant -----------------------------------------------------

def _alpha_interval(value, prec: int):
    if value is None:
        return None
    if hasattr(value, "enclosure"):
        return None if value.is_zero() else value.enclosure(prec)
    return to_interval(value)


def main_term(t: int, m: int, n: int, alpha_value=None, prec: int = DEFAULT_PRECISION):
    """Enclosure of (2 pi sqrt(mu)/t) (n-mu)^(-1/2) alpha I_{-1}(4 pi sqrt(mu(n-mu))/t).

    ``alpha_value`` defaults to the exact alpha_t^(m)(n); an exactly zero
    alpha gives the point interval [0, 0].
    """
    c = constants(t, m)
    if n <= c.mu:
        raise OutOfRange(f"n = {n} must exceed mu = {c.mu}")
    if alpha_value is None:
        alpha_value = alpha(t, m, n % t)
    a = _alpha_interval(alpha_value, prec + 20)
    with interval_precision(prec + 20):
        if a is None or (lower(a) == 0 and upper(a) == 0):
            return iv.mpf(0)
        mu = to_interval(c.mu)
        nm = iv.mpf(n) - mu
        x = 4 * iv.pi * iv.sqrt(mu * nm) / t
        val = 2 * iv.pi * iv.sqrt(mu) / t / iv.sqrt(nm) * a * bessel_I(-1, x, prec + 20)
    with interval_precision(prec):
        return +val


@dataclass(frozen=True)
class _ErrorParts:
    """Ebar(n) = lead * exp(g sqrt(n - mu)) + const, as enclosures."""

    lead: object
    g: object
    const: object
    mu: object


@lru_cache(maxsize=None)
def _error_parts(t: int, m: int, prec: int) -> _ErrorParts:
    c = constants(t, m)
    with interval_precision(prec + 20):
        mu = to_interval(c.mu)
        pi = iv.pi
        M = iv.sqrt(to_interval(c.M_squared))
        A_pow = iv.sqrt(to_interval(c.A)) ** m
        lead = pi ** 1.75 / iv.mpf(2) ** 0.75 * A_pow * iv.sqrt(iv.sqrt(mu))
        g = iv.sqrt(6) * pi * M / 3
        e1 = iv.exp(-pi)
        e2 = iv.exp(-pi / t)
        second = 2 * t * iv.exp(2 + 8 * pi * mu)
        sqrt_t = iv.sqrt(iv.mpf(t))
        third = (2 * iv.exp(2) * sqrt_t ** m * t
                 * iv.exp(pi * mu + m * (e1 / (1 - e1) ** 2 + e2 / (1 - e2) ** 2)))
        return _ErrorParts(lead, g, second + third, mu)


def _error_interval(t: int, m: int, n: int, prec: int):
    p = _error_parts(t, m, prec)
    with interval_precision(prec + 20):
        return p.lead * iv.exp(p.g * iv.sqrt(iv.mpf(n) - p.mu)) + p.const


def _check_n(t: int, m: int, n: int) -> AsymptoticConstants:
    c = constants(t, m)
    if n < 3:
        raise OutOfRange("the error majorant needs n >= 3")
    if n <= c.mu:
        raise OutOfRange(f"n = {n} must exceed mu = {c.mu}")
    return c


def error_bound(t: int, m: int, n: int, prec: int = DEFAULT_PRECISION) -> BigFloat:
    """Upper-rounded Ebar_t^(m)(n), all three summands."""
    _check_n(t, m, n)
    return BigFloat.upper_of(_error_interval(t, m, n, prec), prec)


# -- threshold Delta ------------------------------------------------------------------

def validity_start(t: int, m: int) -> int:
    """Least integer n with n >= mu + (3t/(4 pi))^2 / mu, i.e. Bessel argument >= 3."""
    c = constants(t, m)
    with interval_precision(DEFAULT_PRECISION):
        mu = to_interval(c.mu)
        v = mu + (3 * t / (4 * iv.pi)) ** 2 / mu
        return int(mpmath.ceil(upper(v)))


def _delta_interval(t: int, m: int, n: int, c_min, prec: int):
    p = _error_parts(t, m, prec)
    with interval_precision(prec + 20):
        mu = p.mu
        nm = iv.mpf(n) - mu
        root = iv.sqrt(nm)
        lead = (to_interval(c_min) / 10 * iv.sqrt(iv.pi / t) * iv.sqrt(iv.sqrt(mu))
                / (root * iv.sqrt(root)) * iv.exp(4 * iv.pi * iv.sqrt(mu * nm) / t))
        return lead - (p.lead * iv.exp(p.g * root) + p.const)


def delta_threshold(t: int, m: int, n: int, c_min=Fraction(1, 10),
                    prec: int = DEFAULT_PRECISION) -> BigFloat:
    """Lower-rounded Delta_t^(m)(n) for a lower bound ``c_min`` on |alpha|.

    Delta > 0 certifies that the main term outweighs the error for this n.
    """
    _check_n(t, m, n)
    if not c_min > 0:
        raise ValueError("c_min must be positive")
    if n < validity_start(t, m):
        raise OutOfRange(f"n = {n} is below the validity start {validity_start(t, m)}")
    return BigFloat.lower_of(_delta_interval(t, m, n, c_min, prec), prec)


def delta_positive(t: int, m: int, n: int, c_min, prec: int = DEFAULT_PRECISION) -> bool:
    """True iff Delta(n) > 0 is certified, escalating precision when undecided."""
    while True:
        s = interval_sign(_delta_interval(t, m, n, c_min, prec))
        if s is not None:
            return s > 0
        if prec >= MAX_PRECISION:
            return False
        prec *= 2


# -- cutoff B(t) ----------------------------------------------------------------------

def monotone_start(t: int, m: int) -> int:
    """Past this n, Delta(n) > 0 propagates to every larger n.

    With u = sqrt(n - mu), a = 4 pi sqrt(mu)/t and g = sqrt(6) pi M / 3, the
    main lower bound is L = C u^(-3/2) e^(a u) and Ebar = D e^(g u) + K.
    Delta > 0 iff Ebar/L < 1; d/du log(L / e^(g u)) = a - g - 3/(2u) and
    d/du log L = a - 3/(2u), so both ratios decrease once u > 3/(2(a - g)).
    """
    c = constants(t, m)
    with interval_precision(DEFAULT_PRECISION):
        a = 4 * iv.pi * iv.sqrt(to_interval(c.mu)) / t
        g = iv.sqrt(6) * iv.pi * iv.sqrt(to_interval(c.M_squared)) / 3
        gap = a - g
        if not lower(gap) > 0:
            raise ArithmeticError("no growth gap; tail cannot be certified")
        u0 = iv.mpf(3) / (2 * gap)
        n0 = to_interval(c.mu) + u0 * u0
        return int(mpmath.ceil(upper(n0)))


@dataclass(frozen=True)
class CutoffCertificate:
    """B(t) = max over m of the last n where Delta fails (per-m values kept)."""

    t: int
    B: int
    per_m: dict[int, int]
    c_min: dict[int, BigFloat | None]
    window: int
    window_ok: bool
    monotone_from: dict[int, int] = field(default_factory=dict)


def _last_failure(t: int, m: int, c_min, scan_limit: int, prec: int) -> tuple[int, int]:
    start = max(validity_start(t, m), 3)
    mono = max(monotone_start(t, m), start)

    def ok(n):
        return delta_positive(t, m, n, c_min, prec)

    if not ok(mono):
        # on [mono, inf) positivity is upward closed: gallop, then bisect
        lo, step = mono, 1
        while True:
            hi = lo + step
            if hi > scan_limit:
                raise ArithmeticError(f"Delta stays nonpositive up to {scan_limit} (t={t}, m={m})")
            if ok(hi):
                break
            lo, step = hi, 2 * step
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if ok(mid):
                hi = mid
            else:
                lo = mid
        return lo, mono
    n1 = mono
    n = n1 - 1
    while n >= start and ok(n):
        n -= 1
    return n, mono


def bound_certificate(t: int, c_min_per_m: dict | None = None,
                      window: int = VERIFICATION_WINDOW, scan_limit: int = 10 ** 8,
                      prec: int = DEFAULT_PRECISION) -> CutoffCertificate:
    """Compute and certify B(t) over all admissible m.

    ``c_min_per_m`` maps m to a positive lower bound on |alpha|; by default
    the certified minimum from :func:`alpha_abs_lower_bound` is used.  Values
    of m whose residues all have alpha = 0 carry no sign claim and contribute
    nothing to B.
    """
    per_m, mins, mono = {}, {}, {}
    for m in admissible_m(t):
        cm = None if c_min_per_m is None else c_min_per_m.get(m)
        if cm is None:
            cm = alpha_abs_lower_bound(t, m, prec)
        mins[m] = cm
        if cm is None:
            per_m[m] = 0
            continue
        per_m[m], mono[m] = _last_failure(t, m, cm, scan_limit, prec)
    B = max(max(per_m.values()), 2)
    window_ok = all(
        delta_positive(t, m, n, mins[m], prec)
        for m in per_m if mins[m] is not None
        for n in range(B + 1, B + window + 1)
    )
    return CutoffCertificate(t, B, per_m, mins, window, window_ok, mono)


def find_B(t: int, c_min_per_m: dict | None = None, window: int = VERIFICATION_WINDOW,
           prec: int = DEFAULT_PRECISION) -> int:
    """Certified cutoff: Delta_t^(m)(n) > 0 for every admissible m and n > B."""
    cert = bound_certificate(t, c_min_per_m, window, prec=prec)
    if not cert.window_ok:
        raise ArithmeticError(f"window check failed past B = {cert.B} for t = {t}")
    return cert.B


# -- estimates --------------------------------------------------------------------------

@dataclass(frozen=True)
class AsymptoticEstimate:
    n: int
    main: object
    error_bound: BigFloat
    sign_certified: Sign | None

    @property
    def main_lower(self):
        return lower(self.main)

    @property
    def main_upper(self):
        return upper(self.main)

    def contains(self, value: int) -> bool:
        """Is ``value`` within error_bound of the main-term enclosure?"""
        # exact rationals: the coefficients outgrow any fixed working precision
        eb = _rational(self.error_bound.value)
        return _rational(lower(self.main)) - eb <= value <= _rational(upper(self.main)) + eb


def _rational(x) -> Fraction:
    return Fraction(*libmp.to_rational(x._mpf_))


def estimate(t: int, m: int, n: int, prec: int = DEFAULT_PRECISION) -> AsymptoticEstimate:
    main = main_term(t, m, n, prec=prec)
    eb = error_bound(t, m, n, prec)
    sign = None
    if lower(main) > eb.value:
        sign = Sign.POSITIVE
    elif upper(main) < -eb.value:
        sign = Sign.NEGATIVE
    return AsymptoticEstimate(n, main, eb, sign)


def scaled_residual(t: int, m: int, n: int, coeff: int, prec: int = 128):
    """c(n) sqrt(2t) (n-mu)^(3/4) exp(-4 pi sqrt(mu(n-mu))/t) / mu^(1/4) - alpha(n), as an interval."""
    c = constants(t, m)
    a = alpha(t, m, n % t)
    with interval_precision(prec):
        mu = to_interval(c.mu)
        nm = iv.mpf(n) - mu
        scale = (iv.sqrt(2 * iv.mpf(t)) * iv.sqrt(nm) * iv.sqrt(iv.sqrt(nm))
                 * iv.exp(-4 * iv.pi * iv.sqrt(mu * nm) / t) / iv.sqrt(iv.sqrt(mu)))
        return coeff * scale - (iv.mpf(0) if a.is_zero() else a.enclosure(prec))


__all__ = [
    "AsymptoticConstants", "AsymptoticEstimate", "CutoffCertificate", "OutOfRange",
    "admissible_m", "bessel_I", "bessel_I_quadrature", "bound_certificate", "constants",
    "delta_positive", "delta_threshold", "error_bound", "estimate", "find_B",
    "main_term", "monotone_start", "scaled_residual", "validity_start",
]
