import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st
from mpmath import iv

from borwein.arith import alpha, alpha_abs_lower_bound
from borwein.asymptotics import (
    OutOfRange,
    admissible_m,
    bessel_I,
    bessel_I_quadrature,
    constants,
    delta_positive,
    delta_threshold,
    error_bound,
    estimate,
    find_B,
    main_term,
    monotone_start,
    scaled_residual,
    validity_start,
)
from borwein.bigfloat import interval_precision, lower, upper
from borwein.qseries import borwein_coeffs

TENTH = Fraction(1, 10)


def test_bessel_trivial_values():
    assert lower(bessel_I(-1, 0)) == 0 == upper(bessel_I(-1, 0))
    z = bessel_I(0, 0)
    assert lower(z) <= 1 <= upper(z)


def test_bessel_index_symmetry():
    a, b = bessel_I(-1, 7), bessel_I(1, 7)
    assert lower(a) == lower(b) and upper(a) == upper(b)


def test_bessel_rejects_negative():
    with pytest.raises(ValueError):
        bessel_I(1, -1)


@pytest.mark.parametrize("x", [Fraction(1, 1000), 2, Fraction(31, 7), 25, 99])
def test_bessel_series_vs_quadrature(x):
    enc = bessel_I(1, x, 128)
    ref = bessel_I_quadrature(1, mpmath.mpf(x.numerator) / x.denominator if isinstance(x, Fraction) else x)
    mid = (lower(enc) + upper(enc)) / 2
    assert abs(mid - ref) <= mpmath.mpf(10) ** -10 * abs(ref)
    with mpmath.workdps(40):
        mid = (lower(enc) + upper(enc)) / 2
        xf = mpmath.mpf(x.numerator) / x.denominator if isinstance(x, Fraction) else mpmath.mpf(x)
        assert abs(mid - mpmath.besseli(1, xf)) <= mpmath.mpf(10) ** -30 * abs(ref)


def test_bessel_enclosure_is_tight():
    enc = bessel_I(1, 50, 256)
    assert upper(enc) - lower(enc) <= mpmath.mpf(2) ** -240 * upper(enc)


@settings(max_examples=60)
@given(st.integers(1, 10**6))
def test_bessel_upper_inequality(k):
    x = Fraction(k, 10**4)  # (0, 100]
    with interval_precision(128):
        rhs = iv.sqrt(iv.pi / 8) * iv.exp(iv.mpf(k) / 10**4) / iv.sqrt(iv.mpf(k) / 10**4)
    assert upper(bessel_I(-1, x, 128)) < lower(rhs)


@settings(max_examples=60)
@given(st.integers(3 * 10**4, 10**6))
def test_bessel_lower_inequality(k):
    x = Fraction(k, 10**4)  # [3, 100]
    with interval_precision(128):
        rhs = iv.exp(iv.mpf(k) / 10**4) / (10 * iv.sqrt(iv.mpf(k) / 10**4))
    assert lower(bessel_I(-1, x, 128)) > upper(rhs)


def test_enclosures_shrink_with_precision():
    for prec in (64, 128, 256, 512):
        a, b = bessel_I(1, 37, prec), bessel_I(1, 37, 2 * prec)
        assert lower(a) <= lower(b) and upper(b) <= upper(a)
        m1, m2 = main_term(3, 12, 200, prec=prec), main_term(3, 12, 200, prec=2 * prec)
        assert lower(m1) <= lower(m2) and upper(m2) <= upper(m1)


@pytest.mark.parametrize("t", [2, 3, 5, 7, 11, 13, 17, 19, 23])
def test_constants_prime(t):
    for m in admissible_m(t):
        c = constants(t, m)
        assert c.A == 1
        assert c.M_squared == Fraction(m * (t - 1), 4 * t * t)
        assert c.growth_error.value < c.growth_main.value


@pytest.mark.parametrize("m", range(1, 5))
def test_constants_six(m):
    c = constants(6, m)
    assert c.A == 2
    assert c.M_squared == Fraction(m, 18)


def test_constants_reject():
    for t, m in [(2, 25), (7, 5), (1, 1), (3, 0)]:
        with pytest.raises(OutOfRange):
            constants(t, m)


def test_growth_gap_everywhere():
    for t in range(2, 26):
        for m in admissible_m(t):
            c = constants(t, m)
            assert c.growth_error.value < c.growth_main.value


def test_main_term_contains_coefficient():
    c = borwein_coeffs(2, 24, 100)[100]
    est = estimate(2, 24, 100)
    assert est.contains(c)
    assert est.sign_certified is not None and int(est.sign_certified) == 1


def test_main_term_zero_alpha():
    z = main_term(8, 2, 100)  # alpha vanishes on even residues
    assert lower(z) == 0 == upper(z)
    z = main_term(5, 1, 100, alpha_value=0)
    assert lower(z) == 0 == upper(z)


def test_main_term_sign_three_twelve():
    # alpha(3, 12, r) is positive for r = 2, the residue of c(n) paired with n = 1 mod 3
    # in the shifted indexing c(n + 1)
    for n in (302, 1001, 2000):
        assert n % 3 == 2
        assert lower(main_term(3, 12, n)) > 0


def test_main_term_rejects_small_n():
    with pytest.raises(OutOfRange):
        main_term(2, 24, 1)


def test_error_bound_basic():
    assert error_bound(2, 1, 10).value > 0
    with pytest.raises(OutOfRange):
        error_bound(2, 1, 2)
    with pytest.raises(OutOfRange):
        error_bound(3, 12, 1)


def test_error_bound_growth_rate():
    c = constants(5, 6)
    target = float(math.sqrt(6) * math.pi * math.sqrt(c.M_squared) / 3)
    prev = None
    for n in (10**3, 10**4, 10**5, 10**6):
        r = float(mpmath.log(error_bound(5, 6, n).value)) / math.sqrt(n - float(c.mu))
        if prev is not None:
            assert abs(r - target) < abs(prev - target)
        prev = r
    assert abs(prev - target) < 0.05 * target


@pytest.mark.parametrize("t,m", [(2, 24), (3, 1), (5, 6), (7, 4), (6, 3), (13, 2)])
def test_error_bound_sound_sample(t, m):
    c = borwein_coeffs(t, m, 250)
    for n in range(max(3, int(constants(t, m).mu) + 1), 251, 7):
        assert estimate(t, m, n).contains(c[n])


def test_delta_prefactor():
    # with c_min = 1/10 the prefactor is sqrt(pi/t)/100
    t, m, n = 5, 3, 700
    with interval_precision(200):
        mu = iv.mpf(m * (t - 1)) / 24
        nm = n - mu
        ref = (iv.sqrt(iv.pi / t) / 100 * iv.sqrt(iv.sqrt(mu)) / (iv.sqrt(nm) * iv.sqrt(iv.sqrt(nm)))
               * iv.exp(4 * iv.pi * iv.sqrt(mu * nm) / t))
    got = delta_threshold(t, m, n, TENTH, 256).value + error_bound(t, m, n, 256).value
    assert abs(got - (lower(ref) + upper(ref)) / 2) <= mpmath.mpf(10) ** -40 * upper(ref)


def test_delta_five_window():
    assert all(delta_positive(5, m, n, TENTH) for m in range(1, 7) for n in range(461, 961, 3))


def test_delta_two_twenty_four():
    assert delta_threshold(2, 24, 251, TENTH).value > 0


def test_delta_validity():
    v = validity_start(2, 1)
    with pytest.raises(OutOfRange):
        delta_threshold(2, 1, v - 1)
    delta_threshold(2, 1, v)
    with pytest.raises(ValueError):
        delta_threshold(2, 1, v + 10, 0)


def test_monotone_start_after_validity():
    for t in (2, 3, 5, 7):
        for m in admissible_m(t):
            assert monotone_start(t, m) >= 1


@pytest.mark.parametrize("t,table", [(2, 250), (3, 300), (5, 460), (7, 540), (11, 1910), (13, 3430)])
def test_find_B_below_table(t, table):
    B = find_B(t)
    assert B <= table
    for m in admissible_m(t):
        cm = alpha_abs_lower_bound(t, m)
        assert delta_positive(t, m, B + 1, cm)


def test_alpha_lower_bound_dominates_tenth():
    for t in (2, 3, 5, 7, 11, 13, 17, 19, 23):
        for m in admissible_m(t):
            assert alpha_abs_lower_bound(t, m).value >= 0.1


@pytest.mark.parametrize("t,m", [(2, 24), (3, 12), (5, 6)])
def test_scaled_residual_bounded(t, m):
    c = borwein_coeffs(t, m, 2000)
    mu = m * (t - 1) / 24

    def peak(lo, hi):
        return max(float(abs(mpmath.mpf(upper(scaled_residual(t, m, n, c[n], 96))))) * (n - mu) ** 0.5
                   for n in range(lo, hi, 5))

    assert peak(1000, 2001) <= 1.05 * peak(200, 1000)


def test_five_six_limits():
    c = borwein_coeffs(5, 6, 2004)
    for n in range(2000, 2005):
        a = alpha(5, 6, n % 5)
        r = scaled_residual(5, 6, n, c[n])
        rel = abs(upper(r)) / abs(lower(a.enclosure(64)))
        assert rel < 0.02
    # the class carrying -1 + sqrt(5)
    enc = alpha(5, 6, 3).enclosure(64)
    with interval_precision(64):
        target = iv.sqrt(5) - 1
    assert lower(enc) <= upper(target) and lower(target) <= upper(enc)
