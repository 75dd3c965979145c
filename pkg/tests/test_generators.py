from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from binbbp.generators import (
    DomainError, FamilyId, NotBBPType, OmegaSpec, catalog, catalog_entry, family_coefficients,
    gen_degree1, gen_degree2, gen_family,
)
from binbbp.pformula import (
    PFormula, ScaledFormula, ZeroRelation, agreement_bits, eval_p, eval_scaled, verify,
)
from binbbp.reference import catalan, cl2, eval_expr, ln2, pi, polylog_series, sqrt3

F = Fraction
P2 = 2 ** 12

PI_SQRT3_VECTOR = (2**11, 0, 0, 2**10, 2**9, 0, 2**8, 2**8, 0, 0, 2**6, 0,
                   -2**5, 0, 0, -2**4, -2**3, 0, -2**2, -2**2, 0, 0, -1, 0)
LOG2_VECTOR = (2**11, 0, 2**11, 2**10, -2**9, 0, 2**8, -2**8, -2**8, 0, -2**6, -2**7,
               -2**5, 0, -2**5, -2**4, 2**3, 0, -2**2, 2**2, 2**2, 0, 1, 2)


def test_slugs_round_trip():
    assert len(FamilyId) == 8
    for fid in FamilyId:
        assert FamilyId.from_slug(fid.value) is fid
    with pytest.raises(DomainError):
        FamilyId.from_slug("re-sum-c")


def test_im_sum_a_p1_matches_pi_sqrt3_vector():
    sf = gen_family(FamilyId.IM_SUM_A, 1, 1)
    assert sf.formula.coeffs == PI_SQRT3_VECTOR
    assert sf.scale == F(1, P2) and sf.sqrt3_power == 1


@pytest.mark.parametrize("fid", list(FamilyId))
def test_even_p_rejected(fid):
    with pytest.raises(NotBBPType, match="non-integer exponent"):
        gen_family(fid, 2, 2)


@pytest.mark.parametrize("p", [0, -1])
def test_nonpositive_p_rejected(p):
    with pytest.raises(DomainError):
        gen_family(FamilyId.RE_SUM_A, 1, p)


def test_re_sum_a_p3_identity_192_bits():
    sf = gen_family(FamilyId.RE_SUM_A, 1, 3)
    lhs = polylog_series("re", 1, 3, F(1, 12), 260) + polylog_series("re", 1, 3, F(7, 12), 260)
    assert agreement_bits(lhs, eval_scaled(sf, 256)) >= 192


@given(fid=st.sampled_from(list(FamilyId)), s=st.integers(1, 4), p=st.sampled_from([1, 3, 5, 7, 9]))
def test_integrality(fid, s, p):
    f = gen_family(fid, s, p).formula
    assert f.length == 24 and f.base_log2 == 12 * p and f.degree == s
    assert all(isinstance(a, int) for a in f.coeffs)
    assert any(f.coeffs)


@given(fid=st.sampled_from(list(FamilyId)), p=st.sampled_from([2, 4, 6, 8]))
def test_even_p_always_fails(fid, p):
    with pytest.raises(NotBBPType):
        family_coefficients(fid, p)


# -- degree 1 ------------------------------------------------------------------------------


@pytest.mark.parametrize("fid", list(FamilyId))
@pytest.mark.parametrize("p", [1, 3])
def test_degree1_same_payload(fid, p):
    assert gen_degree1(fid, p).formula == gen_family(fid, 1, p).formula


def test_degree1_im_sum_a_p1_is_pi_sqrt3():
    sf = gen_degree1(FamilyId.IM_SUM_A, 1)
    # sqrt3 atan(sqrt3) = pi sqrt3 / 3, a third of the catalog constant with a third of its scale
    assert agreement_bits(eval_expr(sf.lhs, 200), pi(240) * sqrt3(240) / 3) >= 190
    assert sf.formula.coeffs == PI_SQRT3_VECTOR
    assert sf.scale * 3 == catalog_entry("pi_sqrt3").scale


def test_degree1_im_diff_a_p1_is_zero():
    sf = gen_degree1(FamilyId.IM_DIFF_A, 1)
    assert eval_expr(sf.lhs, 128).contains(0)
    assert sf.formula.coeffs == catalog_entry("Z3").formula.coeffs


def test_degree1_im_diff_a_p3_is_arctan_sixth():
    sf = gen_degree1(FamilyId.IM_DIFF_A, 3)
    arctan = catalog_entry("arctan_1_6")
    assert sf.formula.coeffs == tuple(-2 * a for a in arctan.formula.coeffs)
    assert verify(sf, 192).passed


# -- degree 2 ------------------------------------------------------------------------------


@pytest.mark.parametrize("ident,fid", [(1, FamilyId.IM_SUM_A), (2, FamilyId.IM_DIFF_A),
                                       (3, FamilyId.IM_SUM_B), (4, FamilyId.IM_DIFF_B)])
def test_degree2_payload_and_scale(ident, fid):
    sf = gen_degree2(ident, 3)
    base = gen_family(fid, 2, 3)
    assert sf.formula == base.formula
    assert sf.scale == 2 * base.scale


def test_degree2_ident1_p1_simplifies():
    value = eval_expr(gen_degree2(1, 1).lhs, 128)
    expected = -(pi(160) * ln2(160)) / 3 + cl2(F(1, 3), 160) * F(5, 2)
    assert agreement_bits(value, expected) >= 120


def test_degree2_ident2_p1_gives_catalan():
    sf = gen_degree2(2, 1)
    g = catalan(200)
    # at p = 1 the lhs collapses to -2G/3
    assert agreement_bits(eval_expr(sf.lhs, 160), -g * 2 / 3) >= 150


def test_degree2_ident1_p3_numeric():
    assert verify(gen_degree2(1, 3), 128).agreement_bits >= 120


def test_omega_tangent_p1():
    # tan w1 at p = 1 is tan(pi/6)
    w = OmegaSpec(1, 1)
    assert agreement_bits(eval_expr(w.angle, 128), pi(160) / 6) >= 120


# -- catalog ---------------------------------------------------------------------------------


def test_catalog_counts():
    entries = catalog()
    assert sum(isinstance(e, ScaledFormula) for e in entries) == 10
    assert sum(isinstance(e, ZeroRelation) for e in entries) == 5
    assert len({e.name for e in entries}) == 15


def test_catalog_log2_vector():
    e = catalog_entry("log2")
    assert e.formula.coeffs == LOG2_VECTOR
    assert e.scale == F(1, P2)


def test_catalog_catalan_head():
    e = catalog_entry("catalan_g")
    assert e.scale == F(3, P2)
    assert e.formula.coeffs[:6] == (2**11, -2**11, -2**11, 0, -2**9, -2**10)


def test_catalan_plus_sign_at_23_fails():
    e = catalog_entry("catalan_g")
    coeffs = list(e.formula.coeffs)
    assert coeffs[22] == -1
    coeffs[22] = 1
    flipped = PFormula(2, 12, 24, tuple(coeffs))
    value = eval_p(flipped, 128) * e.scale
    bits = agreement_bits(value, catalan(160))
    assert 15 <= bits <= 22


def test_catalog_matches_generators():
    assert catalog_entry("log2").formula == gen_family(FamilyId.RE_SUM_A, 1, 1).formula
    assert catalog_entry("pi_sqrt3").formula == gen_family(FamilyId.IM_SUM_A, 1, 1).formula
    assert catalog_entry("sqrt3_log_2_plus_sqrt3").formula == gen_family(FamilyId.RE_DIFF_A, 1, 1).formula
    assert catalog_entry("Z3").formula == gen_family(FamilyId.IM_DIFF_A, 1, 1).formula
    g = gen_family(FamilyId.IM_DIFF_A, 2, 1).formula
    assert catalog_entry("catalan_g").formula.coeffs == tuple(-a for a in g.coeffs)


def test_unknown_catalog_name():
    with pytest.raises(KeyError):
        catalog_entry("e")
