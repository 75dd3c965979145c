from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from binbbp.exact import IndeterminateDivision, Real, pow2_scale, sqrt_nat


def R(q, prec=64) -> Real:
    return Real.from_fraction(Fraction(q), prec)


def test_add_integers_exact():
    x = R(1) + R(2)
    assert x.contains(3)
    assert x.rad <= 1


def test_mul_by_exact_zero():
    x = R(Fraction(12345, 7)) * R(0)
    assert x.contains(0)
    assert abs(x.center()) <= Fraction(1, 2**63)


def test_div_one_third_64_bits():
    x = R(1) / R(3)
    assert x.contains(Fraction(1, 3))
    assert abs(x.center() - Fraction(1, 3)) < Fraction(1, 2**63)


def test_div_by_interval_containing_zero():
    z = Real(0, 64, 5)
    with pytest.raises(IndeterminateDivision):
        R(1) / z


@pytest.mark.parametrize("n, prec, expected", [(4, 128, 2), (1, 16, 1), (9, 40, 3)])
def test_sqrt_perfect_squares_exact(n, prec, expected):
    x = sqrt_nat(n, prec)
    assert x.rad == 0
    assert x.center() == expected


def test_sqrt3_128():
    x = sqrt_nat(3, 128)
    # 40 digits from an independent multiprecision library
    assert abs(x.center() - Fraction("1.732050807568877293527446341505872366943")) < Fraction(1, 10**39)
    assert x.lower() ** 2 <= 3 <= x.upper() ** 2
    assert abs(x.center() ** 2 - 3) < Fraction(1, 2**125)


@given(n=st.integers(1, 10**12), prec=st.integers(8, 300))
def test_sqrt_square_bound(n, prec):
    x = sqrt_nat(n, prec)
    tol = Fraction(2) ** (-prec + 2 + math.ceil(math.log2(n)) if n > 1 else -prec + 2)
    assert abs(x.center() ** 2 - n) <= tol
    assert x.lower() ** 2 <= n <= x.upper() ** 2


def test_pow2_scale_examples():
    assert pow2_scale(Real.from_int(1, 32), 3).center() == 8
    x = R(Fraction(22, 7))
    assert pow2_scale(x, 0) == x
    y = pow2_scale(Real(3, 8, 0), -2)
    assert y.center() == Fraction(3, 1024)
    assert pow2_scale(Real.from_int(3, 8), -2).center() == Fraction(3, 4)


rationals = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**4)


@given(a=rationals, b=rationals, prec=st.sampled_from([16, 64, 200]))
def test_containment_binary_ops(a, b, prec):
    x, y = R(a, prec), R(b, prec)
    assert (x + y).contains(a + b)
    assert (x - y).contains(a - b)
    assert (x * y).contains(a * b)
    assert (-x).contains(-a)
    if abs(y.man) > y.rad:
        assert (x / y).contains(a / b)


@settings(max_examples=50)
@given(a=rationals, b=rationals, prec=st.integers(16, 128))
def test_monotone_precision(a, b, prec):
    lo = (R(a, prec) * R(b, prec) + R(a, prec))
    hi = (R(a, prec + 64) * R(b, prec + 64) + R(a, prec + 64))
    assert lo.contains(hi.center())


@given(q=st.fractions(min_value=0, max_value=10**6, max_denominator=10**4), prec=st.integers(16, 200))
def test_sqrt_contains_true_root(q, prec):
    x = R(q, prec).sqrt()
    assert x.lower() <= 0 or x.lower() ** 2 <= q
    assert q <= x.upper() ** 2
