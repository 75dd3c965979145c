"""Polylogarithms of ``2^(-p/2) exp(i x)`` on the pi/12 angle lattice."""

from __future__ import annotations

from fractions import Fraction
from typing import Literal

from ..exact import Real
from .constants import sqrt2, sqrt3
from .expr import Add, Atan, Cl2, Expr, Log, Mul, Neg, Pow2, Sqrt, lit, PiMul
from .trig import Surd, cos_pi, lattice_index, sin_pi, trig_table

Part = Literal["re", "im"]

GUARD = 32


def _check_part(part: str) -> int:
    if part not in ("re", "im"):
        raise ValueError(f"part must be 're' or 'im', not {part!r}")
    return 0 if part == "re" else 1


def polylog_series(part: Part, s: int, p: int, angle: Fraction, prec: int) -> Real:
    """``sum_{k>=1} q^k trig(k x) / k^s`` with ``q = 2^(-p/2)``, ``x = angle*pi``.

    The four components over the basis (1, sqrt2, sqrt3, sqrt6) are summed
    separately in exact fixed point and only combined at the end.
    """
    idx = _check_part(part)
    if s < 1 or p < 1:
        raise ValueError("polylog_series needs s >= 1 and p >= 1")
    k0 = lattice_index(angle)
    w = prec + GUARD
    table = trig_table()
    # tail after K terms <= q^(K+1) / (1 - q) < 4 * 2^(-p(K+1)/2) <= 2^-w
    last = -(-2 * (w + 2) // p)
    sums = [0, 0, 0, 0]
    counts = [0, 0, 0, 0]
    for k in range(1, last + 1):
        v = table[(k * k0) % 24][idx]
        pk = p * k
        if pk & 1:
            v = v.times_sqrt2()
            e = (pk + 1) >> 1
        else:
            e = pk >> 1
        den = (k ** s) << (e + 2)
        for i, comp in enumerate((v.a, v.b, v.c, v.d)):
            if comp:
                num = int(comp * 4)  # components are quarters
                sums[i] += (num << w) // den
                counts[i] += 1
    total = Real(sums[0], w, counts[0])
    for i, root in ((1, sqrt2(w)), (2, sqrt3(w))):
        if counts[i]:
            total = total + Real(sums[i], w, counts[i]) * root
    if counts[3]:
        total = total + Real(sums[3], w, counts[3]) * sqrt2(w) * sqrt3(w)
    return total.widen(1)


# -- closed forms as expressions ------------------------------------------------


def surd_expr(v: Surd) -> Expr:
    """Expression ``a + b sqrt2 + c sqrt3 + d sqrt6`` (zero parts dropped)."""
    terms: list[Expr] = []
    if v.a:
        terms.append(lit(v.a))
    for coef, n in ((v.b, 2), (v.c, 3), (v.d, 6)):
        if coef == 1:
            terms.append(Sqrt(n))
        elif coef:
            terms.append(Mul((lit(coef), Sqrt(n))))
    if not terms:
        return lit(0)
    return terms[0] if len(terms) == 1 else Add(tuple(terms))


def modulus(p: int) -> Expr:
    return Pow2(Fraction(-p, 2))


def omega(p: int, angle: Fraction) -> Expr:
    """``atan(q sin x / (1 - q cos x))``: the argument of 1/(1 - q e^{ix})."""
    q = modulus(p)
    return Atan((q * surd_expr(sin_pi(angle))) / (1 - q * surd_expr(cos_pi(angle))))


def li1_closed(part: Part, p: int, angle: Fraction) -> Expr:
    """Elementary closed form of Re/Im Li_1(q e^{ix})."""
    _check_part(part)
    if part == "im":
        return omega(p, angle)
    q = modulus(p)
    inner = 1 - 2 * q * surd_expr(cos_pi(angle)) + q * q
    return Mul((lit(Fraction(-1, 2)), Log(inner)))


def im_li2_closed(p: int, angle: Fraction) -> Expr:
    """``w log q + Cl2(2w)/2 - Cl2(2w + 2x)/2 + Cl2(2x)/2`` with ``w = omega(p, x)``."""
    half = lit(Fraction(1, 2))
    w = omega(p, angle)
    two_x = PiMul(2 * Fraction(angle))
    return Add((
        Mul((w, Log(modulus(p)))),
        Mul((half, Cl2(Mul((lit(2), w))))),
        Neg(Mul((half, Cl2(Add((Mul((lit(2), w)), two_x)))))),
        Mul((half, Cl2(two_x))),
    ))
