from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from binbbp.exact import Real
from binbbp.pformula import agreement_bits
from binbbp.reference import (
    Atan, ExprSyntaxError, IntLit, Log, Mul, Pi, Sqrt, bernoulli_poly, catalan, cl2,
    cl_duplication_check, clausen_lattice, eval_expr, format_expr, gl_closed, gl_variant_report,
    im_li2_closed, li1_closed, lit, ln2, parse_expr, periodic_series, pi, polylog_series, sqrt3,
    trig_table,
)

F = Fraction


def close(x: Real, y: Real, bits: int) -> bool:
    return agreement_bits(x, y) >= bits


# -- constants ----------------------------------------------------------------------------


def test_pi_and_atan1():
    assert close(eval_expr(Pi(), 128) / 4, eval_expr(Atan(IntLit(1)), 128), 126)


def test_log_one_is_zero():
    x = eval_expr(Log(IntLit(1)), 64)
    assert x.contains(0)


def test_pi_sqrt3_decimal():
    x = eval_expr(Mul((Pi(), Sqrt(3))), 256)
    assert abs(x.center() - F("5.44139809270265355178223477293")) < F(1, 10**28)


def test_constants_against_mpmath():
    mpmath.mp.prec = 300
    for ours, theirs in [(pi(256), mpmath.pi), (ln2(256), mpmath.log(2)), (sqrt3(256), mpmath.sqrt(3)),
                         (catalan(256), mpmath.catalan)]:
        assert close(ours, Real.from_fraction(F(mpmath.nstr(theirs, 90, strip_zeros=False)), 300), 250)


# -- trig table ----------------------------------------------------------------------------


def test_trig_table_pythagoras_and_shift():
    table = trig_table()
    assert len(table) == 24
    for k, (c, s) in enumerate(table):
        one = c * c + s * s
        assert (one.a, one.b, one.c, one.d) == (1, 0, 0, 0)
        c2, _ = table[(6 - k) % 24]
        assert s == c2


# -- polylog -----------------------------------------------------------------------------------


def test_im_li1_pi3_is_pi_over_6():
    x = polylog_series("im", 1, 2, F(1, 3), 128)
    assert close(x, pi(160) / 6, 126)


@pytest.mark.parametrize("s,p", [(1, 1), (2, 3), (3, 2)])
def test_im_at_zero_angle(s, p):
    assert polylog_series("im", s, p, F(0), 64).contains(0)


def test_re_li1_pi4_half_log2():
    x = polylog_series("re", 1, 1, F(1, 4), 128)
    assert close(x, ln2(160) / 2, 126)


def test_li1_closed_im_p2_pi3():
    assert close(eval_expr(li1_closed("im", 2, F(1, 3)), 128), pi(160) / 6, 126)


@pytest.mark.parametrize("p", [1, 2, 5])
def test_li1_closed_re_where_cos_vanishes(p):
    expected = eval_expr(Log(lit(1 + F(1, 2**p))), 160) * F(-1, 2)
    assert close(eval_expr(li1_closed("re", p, F(1, 2)), 128), expected, 126)


@pytest.mark.parametrize("part", ["re", "im"])
@pytest.mark.parametrize("p", [1, 2, 3])
@pytest.mark.parametrize("k", [1, 5, 7, 11])
def test_li1_closed_dual_path(part, p, k):
    angle = F(k, 12)
    assert close(eval_expr(li1_closed(part, p, angle), 128), polylog_series(part, 1, p, angle, 128), 126)


@pytest.mark.parametrize("p", [1, 2, 3])
@pytest.mark.parametrize("k", [1, 4, 5, 7, 11])
def test_im_li2_closed_dual_path(p, k):
    angle = F(k, 12)
    assert close(eval_expr(im_li2_closed(p, angle), 128), polylog_series("im", 2, p, angle, 128), 124)


def test_im_li2_half_pi3_relation():
    # 6 Im Li2(e^{i pi/3}/2) = 5 Cl2(pi/3) - pi log 2
    lhs = polylog_series("im", 2, 2, F(1, 3), 128) * 6
    rhs = cl2(F(1, 3), 160) * 5 - pi(160) * ln2(160)
    assert close(lhs, rhs, 120)


# -- Clausen, Gl and Bernoulli -----------------------------------------------------------------


def test_cl2_special_values():
    assert cl2(F(0), 64).contains(0)
    assert cl2(F(1), 64).contains(0)
    assert abs(cl2(F(1, 3), 96).center() - F("1.014941606409653625021203")) < F(1, 10**24)
    assert close(cl2(F(1, 2), 128), catalan(160), 126)


@pytest.mark.parametrize("k", [1, 2, 3, 5, 7, 11, 13, 19])
def test_cl2_lattice_vs_direct_sum(k):
    assert close(cl2(F(k, 12), 96), clausen_lattice(2, F(k, 12), 96), 94)


@pytest.mark.parametrize("n,x", [(0, F(7, 3)), (1, F(1, 2)), (2, F(1, 2))])
def test_bernoulli_examples(n, x):
    expected = {0: 1, 1: 0, 2: F(-1, 12)}[n]
    assert bernoulli_poly(n, x) == expected


@given(n=st.integers(0, 20), x=st.fractions(min_value=-3, max_value=3, max_denominator=50))
def test_bernoulli_translation(n, x):
    # B_n(x + 1) - B_n(x) = n x^(n-1)
    assert bernoulli_poly(n, x + 1) - bernoulli_poly(n, x) == (n * x ** (n - 1) if n else 0)


def test_gl_closed_values():
    assert close(gl_closed(1, 0, 96), pi(128) ** 2 / 6, 94)
    assert close(gl_closed(1, 1, 96), -(pi(128) ** 2) / 12, 94)
    assert close(gl_closed(2, F(1, 3), 96), periodic_series(4, "cos", F(1, 3), 96), 94)


def test_gl_variant_form_is_not_gl_2n():
    report = gl_variant_report(2, F(1, 3), 64)
    assert abs(report["deviation_from_gl_2n"]) > 1e-3
    assert abs(report["deviation_from_gl_n"]) < 1e-15


@pytest.mark.parametrize("n,m,x", [(2, 1, F(1, 4)), (2, 2, F(1, 6)), (3, 2, F(1, 3))])
def test_duplication_examples(n, m, x):
    assert cl_duplication_check(n, m, x, 96)


# -- expression grammar ------------------------------------------------------------------------


@pytest.mark.parametrize("text", [
    "mul(pi, sqrt(3))",
    "add(neg(mul(1/3, pi, log(2))), mul(5/2, cl2(1/3*pi)))",
    "imli(2, 2, 1/3*pi)",
    "atan(1/6)",
    "catalan",
])
def test_expr_round_trip(text):
    e = parse_expr(text)
    assert format_expr(e) == text
    assert parse_expr(format_expr(e)) == e


def test_expr_syntax_error_position():
    with pytest.raises(ExprSyntaxError) as info:
        parse_expr("mul(pi, sqrt(3)")
    assert info.value.pos == len("mul(pi, sqrt(3)")
