"""Exact scalar arithmetic: Dedekind sums and the cyclotomic values alpha.

Rationals are :class:`fractions.Fraction` (always reduced, positive
denominator).  ``alpha(t, m, n)`` is a sum of ``12t``-th roots of unity and
lives in :class:`CyclotomicElement`, where equality and zero-testing are
exact; numeric signs come from interval evaluation.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from mpmath import iv

from .bigfloat import (
    DEFAULT_PRECISION,
    MAX_PRECISION,
    BigFloat,
    interval_precision,
    interval_sign,
)

Rational = Fraction

SIGN_START_PRECISION = 128


class Sign(enum.IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1

    @classmethod
    def of(cls, x) -> "Sign":
        return cls((x > 0) - (x < 0))


def dedekind_sum(h: int, k: int) -> Fraction:
    r"""s(h, k) = sum_{r=1}^{k-1} (r/k) ((hr/k)) with the sawtooth ((x)).

    Evaluated as a single integer sum over ``2k^2``.
    """
    if k <= 0:
        raise ValueError(f"k must be positive, got {k}")
    if math.gcd(h, k) != 1:
        raise ValueError(f"gcd({h}, {k}) != 1")
    total = 0
    for r in range(1, k):
        total += r * (2 * (h * r % k) - k)
    return Fraction(total, 2 * k * k)


# -- cyclotomic polynomials ------------------------------------------------

def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Long division by a monic integer polynomial (low-degree first)."""
    num = list(num)
    dn = len(den) - 1
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    if len(num) <= dn:
        return [0], num
    quot = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            quot[i - dn] = c
            for j in range(dn + 1):
                num[i - dn + j] -= c * den[j]
    rem = num[:dn] or [0]
    return quot, rem


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Phi_n as coefficients, constant term first.

    Computed by dividing x^n - 1 by Phi_d for every proper divisor d of n.
    """
    if n < 1:
        raise ValueError("order must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic_polynomial(d)))
            if any(rem):
                raise ArithmeticError(f"Phi_{d} does not divide x^{n}-1")
    return tuple(poly)


@dataclass(frozen=True)
class CyclotomicElement:
    """An element of Z[zeta_N], reduced modulo Phi_N.

    ``coeffs[j]`` multiplies zeta_N^j with zeta_N = exp(2 pi i / N); the
    vector has length deg(Phi_N) so equality is structural.
    """

    order: int
    coeffs: tuple[int, ...]

    @classmethod
    def from_exponents(cls, order: int, exponents) -> "CyclotomicElement":
        dense = [0] * order
        for e in exponents:
            dense[e % order] += 1
        return cls.reduce(order, dense)

    @classmethod
    def reduce(cls, order: int, dense: list[int]) -> "CyclotomicElement":
        phi = cyclotomic_polynomial(order)
        deg = len(phi) - 1
        _, rem = _poly_divmod(dense, list(phi))
        rem = list(rem) + [0] * (deg - len(rem))
        return cls(order, tuple(rem[:deg]))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: "CyclotomicElement") -> "CyclotomicElement":
        if other.order != self.order:
            raise ValueError("orders differ")
        return CyclotomicElement(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other: "CyclotomicElement") -> "CyclotomicElement":
        if other.order != self.order:
            raise ValueError("orders differ")
        return CyclotomicElement.reduce(self.order, _poly_mul(list(self.coeffs), list(other.coeffs)))

    def conjugate(self) -> "CyclotomicElement":
        dense = [0] * self.order
        for j, c in enumerate(self.coeffs):
            dense[-j % self.order] += c
        return CyclotomicElement.reduce(self.order, dense)

    def is_real(self) -> bool:
        return self.conjugate() == self

    def enclosure(self, prec: int = DEFAULT_PRECISION):
        """Interval enclosing the value; real part only, so call on real elements."""
        with interval_precision(prec):
            two_pi_over_n = 2 * iv.pi / self.order
            total = iv.mpf(0)
            for j, c in enumerate(self.coeffs):
                if c:
                    total += c * iv.cos(two_pi_over_n * j)
            return total

    def certified_sign(self, start_prec: int = SIGN_START_PRECISION) -> Sign:
        """Exact ZERO test, then interval evaluation doubling precision until 0 is excluded."""
        if self.is_zero():
            return Sign.ZERO
        prec = start_prec
        while True:
            s = interval_sign(self.enclosure(prec))
            if s is not None:
                return Sign(s)
            # nonzero elements always separate from 0 eventually
            prec *= 2

    def __float__(self) -> float:
        return float(self.enclosure(64).mid)


def alpha(t: int, m: int, n: int) -> CyclotomicElement:
    """The exponential sum alpha_t^(m)(n) as an exact element of Z[zeta_{12t}].

    Each summand exp(-m pi i s(h,t) - 2 pi i n h / t) is zeta_{12t} raised to
    -m * 6t s(h,t) - 12 n h; 6t s(h,t) is an integer.
    """
    if t < 1:
        raise ValueError("t must be positive")
    if m < 0:
        raise ValueError("m must be nonnegative")
    order = 12 * t
    exps = []
    for h in range(t):
        if math.gcd(h, t) != 1:
            continue
        scaled = 6 * t * dedekind_sum(h, t)
        if scaled.denominator != 1:
            raise ArithmeticError(f"6*{t}*s({h},{t}) is not an integer")
        exps.append(-m * scaled.numerator - 12 * n * h)
    return CyclotomicElement.from_exponents(order, exps)


@lru_cache(maxsize=None)
def alpha_sign(t: int, m: int, r: int) -> Sign:
    if not 0 <= r < t:
        raise ValueError(f"residue {r} outside [0, {t})")
    return alpha(t, m, r).certified_sign()


def alpha_abs_lower_bound(t: int, m: int, prec: int = DEFAULT_PRECISION) -> BigFloat | None:
    """Certified lower bound on min |alpha_t^(m)(r)| over residues with alpha != 0.

    Returns None when every residue has alpha = 0.
    """
    best = None
    for r in range(t):
        if alpha_sign(t, m, r) is Sign.ZERO:
            continue
        p = prec
        while True:
            enc = alpha(t, m, r).enclosure(p)
            mag = abs(enc)
            if interval_sign(mag) == 1 or p >= MAX_PRECISION:
                break
            p *= 2
        lo = BigFloat.lower_of(mag, prec)
        if best is None or lo < best:
            best = lo
    return best
