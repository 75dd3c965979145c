"""The eight general-p coefficient families, their closed forms and the catalog.

Each family is a length-24 template over four exponent kinds, with ``c`` the
integer attached to a position::

    A: (p - 1)/2 + c p      B: (1 - p)/2 + c p      C: c p      D: 1 + c p

Templates are integral exactly when p is odd.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .pformula import PFormula, ScaledFormula, ZeroRelation
from .reference.expr import (
    Add, Atan, Catalan, Cl2, Expr, ImLi, Log, Mul, Neg, Pi, PiMul, Pow2, ReLi, Sqrt, lit,
)

__all__ = [
    "DomainError",
    "NotBBPType",
    "FamilyId",
    "OmegaSpec",
    "family_coefficients",
    "gen_family",
    "gen_degree1",
    "gen_degree2",
    "catalog",
    "catalog_entry",
    "CATALOG_SOURCES",
]


class DomainError(ValueError):
    pass


class NotBBPType(DomainError):
    def __init__(self) -> None:
        super().__init__("non-integer exponent: formula is not BBP-type for even p")


_TEMPLATES = {
    "re-sum-a": "+A11 0 +B11 +C10 -A9 0 +A8 -C8 -B8 0 -A6 -D6 -A5 0 -B5 -C4 +A3 0 -A2 +C2 +B2 0 +A0 +D0",
    "re-diff-a": "+A11 +C11 0 0 +A9 0 -A8 0 0 -C7 -A6 0 -A5 -C5 0 0 -A3 0 +A2 0 0 +C1 +A0 0",
    "im-sum-a": "+A11 0 0 +C10 +A9 0 +A8 +C8 0 0 +A6 0 -A5 0 0 -C4 -A3 0 -A2 -C2 0 0 -A0 0",
    "im-diff-a": "-A11 +C11 +B11 0 +A9 +D9 +A8 0 +B8 +C7 -A6 0 +A5 -C5 -B5 0 -A3 -D3 -A2 0 -B2 -C1 +A0 0",
    "re-sum-b": "-A11 0 -B11 +C10 +A9 0 -A8 -C8 +B8 0 +A6 -D6 +A5 0 +B5 -C4 -A3 0 +A2 +C2 -B2 0 -A0 +D0",
    "re-diff-b": "+A11 -C11 0 0 +A9 0 -A8 0 0 +C7 -A6 0 -A5 +C5 0 0 -A3 0 +A2 0 0 -C1 +A0 0",
    "im-sum-b": "+A11 0 0 -C10 +A9 0 +A8 -C8 0 0 +A6 0 -A5 0 0 +C4 -A3 0 -A2 +C2 0 0 -A0 0",
    "im-diff-b": "+A11 +C11 -B11 0 -A9 +D9 -A8 0 -B8 +C7 +A6 0 -A5 -C5 +B5 0 +A3 -D3 +A2 0 +B2 -C1 -A0 0",
}


class FamilyId(enum.Enum):
    RE_SUM_A = "re-sum-a"
    RE_DIFF_A = "re-diff-a"
    IM_SUM_A = "im-sum-a"
    IM_DIFF_A = "im-diff-a"
    RE_SUM_B = "re-sum-b"
    RE_DIFF_B = "re-diff-b"
    IM_SUM_B = "im-sum-b"
    IM_DIFF_B = "im-diff-b"

    @classmethod
    def from_slug(cls, slug: str) -> FamilyId:
        try:
            return cls(slug)
        except ValueError:
            raise DomainError(f"unknown family {slug!r}") from None

    @property
    def part(self) -> str:
        return self.value[:2]

    @property
    def combination(self) -> str:
        return self.value.split("-")[1]

    @property
    def angles(self) -> tuple[Fraction, Fraction]:
        """The angle pair in units of pi."""
        if self.value.endswith("-a"):
            return Fraction(1, 12), Fraction(7, 12)
        return Fraction(5, 12), Fraction(11, 12)

    @property
    def sqrt3_power(self) -> int:
        return int(self.value in ("re-diff-a", "re-diff-b", "im-sum-a", "im-sum-b"))

    @property
    def template(self) -> str:
        return _TEMPLATES[self.value]

    def describe(self) -> str:
        x1, x2 = self.angles
        op = "+" if self.combination == "sum" else "-"
        part = "Re" if self.part == "re" else "Im"
        pre = "sqrt(3)" if self.sqrt3_power else "1"
        return (f"{part} Li_s(2^(-p/2) e^(i {x1} pi)) {op} {part} Li_s(2^(-p/2) e^(i {x2} pi))"
                f" = {pre}/2^(12p) P(s, 2^(12p), 24, A)")


def _check_p(p: int) -> None:
    if not isinstance(p, int) or p <= 0:
        raise DomainError(f"p must be a positive integer, got {p!r}")
    if p % 2 == 0:
        raise NotBBPType()


def _exponent(kind: str, c: int, p: int) -> Fraction:
    return {
        "A": Fraction(p - 1, 2) + c * p,
        "B": Fraction(1 - p, 2) + c * p,
        "C": Fraction(c * p),
        "D": Fraction(1 + c * p),
    }[kind]


def family_coefficients(fid: FamilyId, p: int) -> tuple[int, ...]:
    """The 24 integer coefficients of a family at odd p."""
    _check_p(p)
    out = []
    for tok in fid.template.split():
        if tok == "0":
            out.append(0)
            continue
        sign = -1 if tok[0] == "-" else 1
        e = _exponent(tok[1], int(tok[2:]), p)
        if e.denominator != 1 or e < 0:
            raise NotBBPType()
        out.append(sign << int(e))
    return tuple(out)


def _polylog_pair(fid: FamilyId, s: int, p: int) -> Expr:
    node = ReLi if fid.part == "re" else ImLi
    x1, x2 = fid.angles
    second = node(s, p, x2)
    return Add((node(s, p, x1), second if fid.combination == "sum" else Neg(second)))


def gen_family(fid: FamilyId, s: int, p: int) -> ScaledFormula:
    """Degree-s member of a family with its polylogarithm left-hand side."""
    _check_p(p)
    if not isinstance(s, int) or s < 1:
        raise DomainError(f"degree must be a positive integer, got {s!r}")
    formula = PFormula(s, 12 * p, 24, family_coefficients(fid, p))
    return ScaledFormula(
        name=f"{fid.value}-s{s}-p{p}",
        p_param=p,
        scale=Fraction(1, 1 << (12 * p)),
        sqrt3_power=fid.sqrt3_power,
        formula=formula,
        lhs=_polylog_pair(fid, s, p),
    )


# -- degree 1 ------------------------------------------------------------------------


def _p2(e: Fraction | int) -> Expr:
    return Pow2(Fraction(e))


def _sum(*terms: Expr) -> Expr:
    return Add(tuple(terms))


def _degree1_lhs(fid: FamilyId, p: int) -> tuple[Expr, int]:
    """Closed form and the integer multiplying 1/2^(12p)."""
    h = Fraction(1, 2)
    sqrt3 = Sqrt(3)
    half_sqrt3 = Mul((lit(h), sqrt3))
    if fid is FamilyId.RE_SUM_A:
        inner = _sum(lit(1), Neg(_p2(h - h * p)), _p2(-p), Neg(_p2(h - 3 * h * p)), _p2(-2 * p))
        return Mul((lit(-h), Log(inner))), 1
    if fid is FamilyId.RE_SUM_B:
        inner = _sum(lit(1), _p2(h - h * p), _p2(-p), _p2(h - 3 * h * p), _p2(-2 * p))
        return Mul((lit(-h), Log(inner))), 1
    if fid is FamilyId.RE_DIFF_A:
        q = _p2(-h - h * p)
        top = _sum(lit(1), Mul((q, sqrt3)), Neg(q), _p2(-p))
        bottom = _sum(lit(1), Neg(_p2(h - h * p)), Neg(_p2(h - 3 * h * p)), _p2(-2 * p), _p2(-p))
        return Mul((half_sqrt3, Log(Mul((top, top)) / bottom))), 3
    if fid is FamilyId.RE_DIFF_B:
        q = _p2(-h - h * p)
        top = _sum(lit(1), Mul((q, _sum(lit(1), sqrt3))), _p2(-p))
        bottom = _sum(lit(1), Mul((q, _sum(lit(1), Neg(sqrt3)))), _p2(-p))
        return Mul((half_sqrt3, Log(top / bottom))), 3
    if fid is FamilyId.IM_SUM_A:
        r = _p2(h * (p + 1))
        ratio = _sum(lit(1), Neg(r)) / _sum(lit(1), r, Neg(_p2(p + 1)))
        return Mul((sqrt3, Atan(Mul((ratio, sqrt3))))), 3
    if fid is FamilyId.IM_SUM_B:
        r = _p2(h * (p + 1))
        ratio = _sum(lit(1), r) / _sum(lit(-1), r, _p2(p + 1))
        return Mul((sqrt3, Atan(Mul((ratio, sqrt3))))), 3
    if fid is FamilyId.IM_DIFF_A:
        ratio = _sum(_p2(h - h * p), lit(-1)) / _sum(Neg(_p2(h + h * p)), lit(1))
        return Neg(Atan(ratio)), 1
    ratio = _sum(_p2(h - h * p), lit(1)) / _sum(_p2(h + h * p), lit(1))
    return Atan(ratio), 1


def gen_degree1(fid: FamilyId, p: int) -> ScaledFormula:
    """Degree-1 member with the elementary (log or arctan) left-hand side."""
    base = gen_family(fid, 1, p)
    lhs, mult = _degree1_lhs(fid, p)
    return ScaledFormula(
        name=f"{fid.value}-deg1-p{p}",
        p_param=p,
        scale=Fraction(mult, 1 << (12 * p)),
        sqrt3_power=0,
        formula=base.formula,
        lhs=lhs,
    )


# -- degree 2 ------------------------------------------------------------------------


@dataclass(frozen=True)
class OmegaSpec:
    """One of the four auxiliary angles, ``tan w_i = num / (sqrt2^(p+3) + offset)``."""

    index: int
    p: int

    def __post_init__(self) -> None:
        if self.index not in (1, 2, 3, 4):
            raise DomainError("omega index must be 1..4")
        _check_p(self.p)

    @property
    def tangent(self) -> Expr:
        sqrt3 = Sqrt(3)
        r = _p2(Fraction(self.p + 3, 2))
        num, off = {
            1: (_sum(sqrt3, lit(-1)), _sum(Neg(sqrt3), lit(-1))),
            2: (_sum(sqrt3, lit(1)), _sum(sqrt3, lit(-1))),
            3: (_sum(sqrt3, lit(1)), _sum(Neg(sqrt3), lit(1))),
            4: (_sum(sqrt3, lit(-1)), _sum(sqrt3, lit(1))),
        }[self.index]
        return num / _sum(r, off)

    @property
    def angle(self) -> Expr:
        return Atan(self.tangent)


_DEGREE2_FAMILY = {
    1: FamilyId.IM_SUM_A,
    2: FamilyId.IM_DIFF_A,
    3: FamilyId.IM_SUM_B,
    4: FamilyId.IM_DIFF_B,
}


def _degree2_lhs(ident: int, p: int) -> Expr:
    log2p = Mul((lit(p), Log(lit(2))))
    first, second = (1, 2) if ident <= 2 else (3, 4)
    w1 = OmegaSpec(first, p).angle
    w2 = OmegaSpec(second, p).angle
    two_w1 = Mul((lit(2), w1))
    two_w2 = Mul((lit(2), w2))
    off1, off2 = (Fraction(1, 6), Fraction(5, 6)) if ident <= 2 else (Fraction(5, 6), Fraction(1, 6))
    shifted1 = Cl2(_sum(two_w1, PiMul(off1)))
    shifted2 = Cl2(_sum(Neg(two_w2), PiMul(off2)))
    half_cl2_pi3 = Mul((lit(Fraction(1, 2)), Cl2(PiMul(Fraction(1, 3)))))
    four_g_3 = Mul((lit(Fraction(4, 3)), Catalan()))
    if ident in (1, 3):
        return _sum(
            Neg(Mul((_sum(w1, w2), log2p))),
            Cl2(two_w1),
            Cl2(two_w2),
            Neg(shifted1),
            shifted2,
            half_cl2_pi3 if ident == 1 else Neg(half_cl2_pi3),
        )
    return _sum(
        Mul((_sum(w2, Neg(w1)), log2p)),
        Cl2(two_w1),
        Neg(Cl2(two_w2)),
        Neg(shifted1),
        Neg(shifted2),
        four_g_3,
    )


def gen_degree2(ident: int, p: int) -> ScaledFormula:
    """Degree-2 identity 1..4 with its Clausen-value left-hand side."""
    if ident not in _DEGREE2_FAMILY:
        raise DomainError("degree-2 identity must be 1..4")
    base = gen_family(_DEGREE2_FAMILY[ident], 2, p)
    return ScaledFormula(
        name=f"deg2-{ident}-p{p}",
        p_param=p,
        scale=base.scale * 2,
        sqrt3_power=base.sqrt3_power,
        formula=base.formula,
        lhs=_degree2_lhs(ident, p),
    )


# -- catalog -----------------------------------------------------------------------------


def _pow2_vector(text: str) -> tuple[int, ...]:
    """Parse entries like ``2^11``, ``-3*2^8``, ``0``, ``-1``, ``6``."""
    out = []
    for tok in text.split():
        sign = -1 if tok.startswith("-") else 1
        tok = tok.lstrip("-")
        mult = 1
        if "*" in tok:
            m, tok = tok.split("*")
            mult = int(m)
        value = 1 << int(tok[2:]) if tok.startswith("2^") else int(tok)
        out.append(sign * mult * value)
    if len(out) != 24:
        raise AssertionError(f"vector has {len(out)} entries")
    return tuple(out)


_VECTORS = {
    "log2": "2^11 0 2^11 2^10 -2^9 0 2^8 -2^8 -2^8 0 -2^6 -2^7 -2^5 0 -2^5 -2^4 2^3 0 -2^2 2^2 2^2 0 1 2",
    "pi_sqrt3": "2^11 0 0 2^10 2^9 0 2^8 2^8 0 0 2^6 0 -2^5 0 0 -2^4 -2^3 0 -2^2 -2^2 0 0 -1 0",
    "sqrt3_log_2_plus_sqrt3": "2^11 2^11 0 0 2^9 0 -2^8 0 0 -2^7 -2^6 0 -2^5 -2^5 0 0 -2^3 0 2^2 0 0 2 1 0",
    "arctan_1_6": "2^33 -2^32 -2^31 0 -2^27 -2^27 -2^24 0 -2^22 -2^20 2^18 0 -2^15 2^14 2^13 0 "
                  "2^9 2^9 2^6 0 2^4 2^2 -1 0",
    "im_li2_half_pi3": "0 2^10 0 2^9 0 0 0 -2^7 0 -2^6 0 0 0 2^4 0 2^3 0 0 0 -2 0 -1 0 0",
    "sqrt3_cl2_pi3": "2^11 -2^12 0 -2^10 2^9 0 2^8 3*2^8 0 2^8 2^6 0 -2^5 -2^6 0 -3*2^4 -2^3 0 "
                     "-2^2 2^2 0 2^2 -1 0",
    "pi_sqrt3_log2": "2^11 -3*2^11 0 -2^11 2^9 0 2^8 2^10 0 3*2^7 2^6 0 -2^5 -3*2^5 0 -2^6 -2^3 0 "
                     "-2^2 2^3 0 6 -1 0",
    # position 23 is -1, making the vector exactly minus im-diff-a at p = 1; with +1
    # there the identity fails by 6/23^2 * 2^-12, about 2^-18.5
    "catalan_g": "2^11 -2^11 -2^11 0 -2^9 -2^10 -2^8 0 -2^8 -2^7 2^6 0 -2^5 2^5 2^5 0 2^3 2^4 2^2 0 "
                 "2^2 2 -1 0",
    "pi_sqrt3_alt": "0 2^10 0 2^9 0 0 0 -2^7 0 -2^6 0 0 0 2^4 0 2^3 0 0 0 -2 0 -1 0 0",
    "Z1": "2^11 -2^12 0 -2^10 2^9 0 2^8 3*2^8 0 2^8 2^6 0 -2^5 -2^6 0 -3*2^4 -2^3 0 -2^2 2^2 0 2^2 -1 0",
    "Z2": "2^11 -2^12 2^11 -2^10 -2^9 -2^10 2^8 -3*2^8 -2^8 -2^8 -2^6 -2^8 -2^5 -2^6 -2^5 -3*2^4 "
          "2^3 -2^4 -2^2 -2^2 2^2 -2^2 1 0",
    "Z3": "-2^11 2^11 2^11 0 2^9 2^10 2^8 0 2^8 2^7 -2^6 0 2^5 -2^5 -2^5 0 -2^3 -2^4 -2^2 0 -2^2 -2 1 0",
    "Z4": "2^11 0 -2^12 -3*2^10 -2^9 0 2^8 3*2^8 2^9 0 -2^6 0 -2^5 0 2^6 3*2^4 2^3 0 -2^2 -3*2^2 -2^3 0 1 0",
    "Z5": "2^11 -2^13 2^11 5*2^10 -2^9 2^10 2^8 3*2^8 -2^8 -2^9 -2^6 -2^8 -2^5 -2^7 -2^5 3*2^4 "
          "2^3 2^4 -2^2 5*2^2 2^2 -2^3 1 0",
}

# name -> (family, degree, p, rational r) with catalog vector = r * family vector
CATALOG_SOURCES: dict[str, tuple[FamilyId, int, int, Fraction]] = {
    "log2": (FamilyId.RE_SUM_A, 1, 1, Fraction(1)),
    "pi_sqrt3": (FamilyId.IM_SUM_A, 1, 1, Fraction(1)),
    "sqrt3_log_2_plus_sqrt3": (FamilyId.RE_DIFF_A, 1, 1, Fraction(1)),
    "arctan_1_6": (FamilyId.IM_DIFF_A, 1, 3, Fraction(-1, 2)),
    "catalan_g": (FamilyId.IM_DIFF_A, 2, 1, Fraction(-1)),
    "log2_cl2_pi3": (FamilyId.IM_SUM_A, 2, 1, Fraction(1)),
    "Z3": (FamilyId.IM_DIFF_A, 1, 1, Fraction(1)),
}


def _scaled(name: str, p: int | None, s: int, m: int, scale: Fraction, t: int, lhs: Expr,
            vector: tuple[int, ...] | None = None) -> ScaledFormula:
    coeffs = vector if vector is not None else _pow2_vector(_VECTORS[name])
    return ScaledFormula(name, p, scale, t, PFormula(s, m, 24, coeffs), lhs)


def catalog() -> list[ScaledFormula | ZeroRelation]:
    """The named particular formulas followed by the five zero relations."""
    sqrt3 = Sqrt(3)
    log2 = Log(lit(2))
    pi_sqrt3 = Mul((Pi(), sqrt3))
    third = PiMul(Fraction(1, 3))
    entries: list[ScaledFormula | ZeroRelation] = [
        _scaled("log2", 1, 1, 12, Fraction(1, 2**12), 0, log2),
        _scaled("pi_sqrt3", 1, 1, 12, Fraction(9, 2**12), 0, pi_sqrt3),
        _scaled("sqrt3_log_2_plus_sqrt3", 1, 1, 12, Fraction(3, 2**12), 0,
                Mul((sqrt3, Log(_sum(lit(2), sqrt3))))),
        _scaled("arctan_1_6", 3, 1, 36, Fraction(1, 2**35), 0, Atan(lit(Fraction(1, 6)))),
        _scaled("im_li2_half_pi3", None, 2, 12, Fraction(1, 2**10), 1, ImLi(2, 2, Fraction(1, 3))),
        _scaled("sqrt3_cl2_pi3", None, 2, 12, Fraction(9, 5 * 2**10), 0, Mul((sqrt3, Cl2(third)))),
        _scaled("pi_sqrt3_log2", None, 2, 12, Fraction(9, 2**10), 0, Mul((Pi(), sqrt3, log2))),
        _scaled("catalan_g", 1, 2, 12, Fraction(3, 2**12), 0, Catalan()),
        _scaled("pi_sqrt3_alt", None, 1, 12, Fraction(9, 2**10), 0, pi_sqrt3),
        _scaled("log2_cl2_pi3", 1, 2, 12, Fraction(1, 2**11), 1,
                _sum(Neg(Mul((lit(Fraction(1, 3)), Pi(), log2))),
                     Mul((lit(Fraction(5, 2)), Cl2(third)))),
                vector=family_coefficients(FamilyId.IM_SUM_A, 1)),
    ]
    entries += [ZeroRelation(z, PFormula(1, 12, 24, _pow2_vector(_VECTORS[z])))
                for z in ("Z1", "Z2", "Z3", "Z4", "Z5")]
    return entries


def catalog_entry(name: str) -> ScaledFormula | ZeroRelation:
    for e in catalog():
        if e.name == name:
            return e
    raise KeyError(name)
