import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from borwein.arith import (
    CyclotomicElement,
    Sign,
    alpha,
    alpha_abs_lower_bound,
    alpha_sign,
    cyclotomic_polynomial,
    dedekind_sum,
)
from borwein.bigfloat import interval_sign


def sawtooth(x: Fraction) -> Fraction:
    if x.denominator == 1:
        return Fraction(0)
    return x - math.floor(x) - Fraction(1, 2)


def dedekind_oracle(h, k):
    return sum(sawtooth(Fraction(r, k)) * sawtooth(Fraction(h * r, k)) for r in range(1, k))


def alpha_oracle(t, m, n):
    total = 0
    for h in range(t):
        if math.gcd(h, t) == 1:
            s = float(dedekind_oracle(h, t))
            total += cmath.exp(-1j * math.pi * m * s - 2j * math.pi * n * h / t)
    return total


@pytest.mark.parametrize("h,k,expected", [(5, 1, 0), (1, 2, 0), (1, 3, Fraction(1, 18))])
def test_dedekind_examples(h, k, expected):
    assert dedekind_sum(h, k) == expected


def test_dedekind_rejects():
    with pytest.raises(ValueError):
        dedekind_sum(2, 4)
    with pytest.raises(ValueError):
        dedekind_sum(1, 0)


def test_reciprocity_all_pairs_to_50():
    for h in range(1, 51):
        for k in range(1, 51):
            if math.gcd(h, k) == 1:
                lhs = dedekind_sum(h, k) + dedekind_sum(k, h)
                rhs = Fraction(-1, 4) + (Fraction(h, k) + Fraction(k, h) + Fraction(1, h * k)) / 12
                assert lhs == rhs


def test_6k_times_s_integral():
    for k in range(1, 201):
        for h in range(k):
            if math.gcd(h, k) == 1:
                assert (6 * k * dedekind_sum(h, k)).denominator == 1


@given(st.integers(1, 40), st.integers(-200, 200))
def test_matches_sawtooth_definition(k, h):
    if math.gcd(h, k) == 1:
        assert dedekind_sum(h, k) == dedekind_oracle(h, k)


def test_cyclotomic_small():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    assert len(cyclotomic_polynomial(36)) - 1 == 12  # phi(36)


def test_cyclotomic_zero_is_exact():
    # 1 + z + ... + z^(n-1) = 0 for a primitive n-th root
    assert CyclotomicElement.from_exponents(7, range(7)).is_zero()
    assert not CyclotomicElement.from_exponents(7, range(6)).is_zero()


@given(st.integers(1, 30), st.integers(0, 25), st.integers(0, 200))
def test_alpha_periodic_and_real(t, m, n):
    a = alpha(t, m, n)
    assert a == alpha(t, m, n % t) == alpha(t, m, n + t)
    assert a.is_real()


@given(st.integers(1, 24), st.integers(1, 24), st.integers(0, 50))
def test_alpha_against_float_sum(t, m, n):
    ref = alpha_oracle(t, m, n)
    assert abs(ref.imag) < 1e-9
    assert abs(float(alpha(t, m, n)) - ref.real) < 1e-9


@given(st.integers(1, 30), st.integers(0, 60))
def test_alpha_t2_and_t1(m, n):
    assert float(alpha(2, m, n)) == pytest.approx((-1) ** n)
    assert float(alpha(1, m, n)) == pytest.approx(1)


@pytest.mark.parametrize("t,m,r,sign", [(3, 12, 2, Sign.POSITIVE), (5, 5, 0, Sign.ZERO),
                                         (2, 24, 1, Sign.NEGATIVE)])
def test_alpha_sign_examples(t, m, r, sign):
    assert alpha_sign(t, m, r) is sign


@given(st.integers(2, 24), st.integers(1, 24), st.integers(0, 23))
def test_sign_stable_under_precision_doubling(t, m, r):
    r %= t
    a = alpha(t, m, r)
    s = alpha_sign(t, m, r)
    if s is Sign.ZERO:
        assert a.is_zero()
        return
    p = 128
    while interval_sign(a.enclosure(p)) is None:
        p *= 2
    assert interval_sign(a.enclosure(p)) == int(s)
    assert interval_sign(a.enclosure(2 * p)) == int(s)


def test_alpha_sign_rejects_bad_residue():
    with pytest.raises(ValueError):
        alpha_sign(5, 1, 5)


def test_abs_lower_bound():
    assert float(alpha_abs_lower_bound(2, 24)) == pytest.approx(1.0)
    assert float(alpha_abs_lower_bound(1, 1)) == pytest.approx(1.0)
    assert alpha_abs_lower_bound(5, 1) >= Fraction(1, 10)


def test_abs_lower_bound_at_least_tenth_for_primes():
    for t in (2, 3, 5, 7, 11, 13, 17, 19, 23):
        for m in range(1, 24 // (t - 1) + 1):
            lb = alpha_abs_lower_bound(t, m)
            assert lb is not None and lb >= Fraction(1, 10)
            # and it really is a lower bound
            vals = [abs(alpha_oracle(t, m, r)) for r in range(t) if alpha_sign(t, m, r) is not Sign.ZERO]
            assert float(lb) <= min(vals) + 1e-12
