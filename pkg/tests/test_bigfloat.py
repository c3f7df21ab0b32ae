from fractions import Fraction

import mpmath
from hypothesis import given, strategies as st
from mpmath import iv

from borwein.bigfloat import BigFloat, Rounding, interval_precision, lower, upper


@given(st.fractions(min_value=-10**6, max_value=10**6), st.integers(20, 300))
def test_directed_rounding_brackets(x, prec):
    lo = BigFloat.make(x, prec, Rounding.DOWN)
    hi = BigFloat.make(x, prec, Rounding.UP)
    assert lo <= x <= hi


def test_arithmetic_rounds_in_direction():
    third_lo = BigFloat.make(1, 64, Rounding.DOWN) / 3
    third_hi = BigFloat.make(1, 64, Rounding.UP) / 3
    assert third_lo < Fraction(1, 3) < third_hi
    assert BigFloat.make(2, 64, Rounding.UP).sqrt() * BigFloat.make(2, 64, Rounding.UP).sqrt() >= 2


def test_interval_precision_restores():
    saved = iv.prec
    with interval_precision(500):
        assert iv.prec == 500
    assert iv.prec == saved


def test_endpoints_keep_full_precision():
    with interval_precision(300):
        x = +iv.pi
    with mpmath.workprec(1000):
        width = upper(x) - lower(x)
    assert 0 < width < mpmath.mpf(2) ** -250
