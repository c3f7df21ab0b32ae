"""Directed-rounding floats and interval helpers on top of mpmath.

Interval work goes through ``mpmath.iv``; :class:`BigFloat` is the scalar
carrier for one-sided results (an upper bound, a lower bound) with its
precision and rounding mode attached.
"""

from __future__ import annotations

import enum
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

import mpmath
from mpmath import iv, libmp

DEFAULT_PRECISION = 256
MAX_PRECISION = 4096


class Rounding(enum.Enum):
    DOWN = libmp.round_floor
    UP = libmp.round_ceiling
    NEAREST = libmp.round_nearest


@contextmanager
def interval_precision(bits: int) -> Iterator[None]:
    """Temporarily set the working precision of ``mpmath.iv``.

    The interval context is process-global, so callers running in threads
    must not interleave different precisions.
    """
    saved = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = saved


def to_interval(x) -> "iv.mpf":
    """Enclose an int, Fraction, mpf, BigFloat or interval."""
    if isinstance(x, Fraction):
        return iv.mpf(x.numerator) / x.denominator
    if isinstance(x, BigFloat):
        return iv.mpf(x.value)
    return iv.mpf(x)


def _exact(raw) -> mpmath.mpf:
    # mpmath.mpf(raw) would re-round to the global mp.prec
    return mpmath.mp.make_mpf(raw)


def lower(x) -> mpmath.mpf:
    return _exact(x._mpi_[0])


def upper(x) -> mpmath.mpf:
    return _exact(x._mpi_[1])


def excludes_zero(x) -> bool:
    return lower(x) > 0 or upper(x) < 0


def interval_sign(x) -> int | None:
    """+1 / -1 when the enclosure excludes zero, else None."""
    if lower(x) > 0:
        return 1
    if upper(x) < 0:
        return -1
    return None


Number = Union[int, Fraction, "BigFloat", mpmath.mpf]


@dataclass(frozen=True)
class BigFloat:
    """A binary float at a stated precision, rounded in a stated direction.

    Arithmetic between two BigFloats uses the left operand's precision and
    rounding mode; ``+ - * /`` and :meth:`sqrt` are correctly rounded for
    int and BigFloat operands.
    """

    value: mpmath.mpf
    prec: int = DEFAULT_PRECISION
    rounding: Rounding = Rounding.NEAREST

    @classmethod
    def make(cls, x: Number, prec: int = DEFAULT_PRECISION,
             rounding: Rounding = Rounding.NEAREST) -> "BigFloat":
        rnd = rounding.value
        if isinstance(x, BigFloat):
            raw = libmp.mpf_pos(x.value._mpf_, prec, rnd)
        elif isinstance(x, Fraction):
            raw = libmp.mpf_div(libmp.from_int(x.numerator), libmp.from_int(x.denominator), prec, rnd)
        elif isinstance(x, int):
            raw = libmp.from_int(x, prec, rnd)
        else:
            raw = libmp.mpf_pos(_as_mpf(x)._mpf_, prec, rnd)
        return cls(_exact(raw), prec, rounding)

    @classmethod
    def lower_of(cls, x, prec: int = DEFAULT_PRECISION) -> "BigFloat":
        return cls.make(lower(x), prec, Rounding.DOWN)

    @classmethod
    def upper_of(cls, x, prec: int = DEFAULT_PRECISION) -> "BigFloat":
        return cls.make(upper(x), prec, Rounding.UP)

    def _raw(self, other: Number):
        if isinstance(other, BigFloat):
            return other.value._mpf_
        if isinstance(other, int):
            return libmp.from_int(other)
        if isinstance(other, Fraction):
            return BigFloat.make(other, self.prec + 64, self.rounding).value._mpf_
        return _as_mpf(other)._mpf_

    def _wrap(self, raw) -> "BigFloat":
        return BigFloat(_exact(raw), self.prec, self.rounding)

    def __add__(self, other: Number) -> "BigFloat":
        return self._wrap(libmp.mpf_add(self.value._mpf_, self._raw(other), self.prec, self.rounding.value))

    def __sub__(self, other: Number) -> "BigFloat":
        return self._wrap(libmp.mpf_sub(self.value._mpf_, self._raw(other), self.prec, self.rounding.value))

    def __mul__(self, other: Number) -> "BigFloat":
        return self._wrap(libmp.mpf_mul(self.value._mpf_, self._raw(other), self.prec, self.rounding.value))

    def __truediv__(self, other: Number) -> "BigFloat":
        return self._wrap(libmp.mpf_div(self.value._mpf_, self._raw(other), self.prec, self.rounding.value))

    def __neg__(self) -> "BigFloat":
        return BigFloat(-self.value, self.prec, self.rounding)

    def sqrt(self) -> "BigFloat":
        return self._wrap(libmp.mpf_sqrt(self.value._mpf_, self.prec, self.rounding.value))

    def __float__(self) -> float:
        return float(self.value)

    def _key(self, other: Number):
        if isinstance(other, Fraction):
            return Fraction(*libmp.to_rational(self.value._mpf_)), other
        return self.value, _as_mpf(other)

    def __lt__(self, other: Number) -> bool:
        a, b = self._key(other)
        return a < b

    def __le__(self, other: Number) -> bool:
        a, b = self._key(other)
        return a <= b

    def __gt__(self, other: Number) -> bool:
        a, b = self._key(other)
        return a > b

    def __ge__(self, other: Number) -> bool:
        a, b = self._key(other)
        return a >= b

    def __repr__(self) -> str:
        return f"BigFloat({mpmath.nstr(self.value, 20)}, prec={self.prec}, {self.rounding.name})"


def _as_mpf(x) -> mpmath.mpf:
    if isinstance(x, BigFloat):
        return x.value
    if isinstance(x, mpmath.mpf):
        return x
    if isinstance(x, int):
        return _exact(libmp.from_int(x))
    return mpmath.mpf(x)
