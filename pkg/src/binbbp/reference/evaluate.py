from __future__ import annotations

from fractions import Fraction

from ..exact import Real, pow2_scale, sqrt_nat
from . import constants
from .clausen import cl2, clausen2
from .expr import (
    Add, Atan, Catalan, Cl2, Div, Expr, ImLi, IntLit, Log, Mul, Neg, Pi, PiMul,
    Pow2, RatLit, ReLi, Sqrt, lattice_angle,
)
from .polylog import polylog_series

__all__ = ["eval_expr"]


def _eval(e: Expr, w: int) -> Real:
    if isinstance(e, IntLit):
        return Real.from_int(e.value, w)
    if isinstance(e, RatLit):
        return Real.from_fraction(e.value, w)
    if isinstance(e, Pi):
        return constants.pi(w)
    if isinstance(e, PiMul):
        c = Fraction(e.coef)
        return constants.pi(w + 8) * c.numerator / c.denominator
    if isinstance(e, Sqrt):
        return sqrt_nat(e.n, w)
    if isinstance(e, Pow2):
        k = Fraction(e.e)
        whole = k.numerator // k.denominator
        base = sqrt_nat(2, w) if k.denominator == 2 else Real.from_int(1, w)
        return pow2_scale(base, whole)
    if isinstance(e, Add):
        acc = _eval(e.args[0], w)
        for a in e.args[1:]:
            acc = acc + _eval(a, w)
        return acc
    if isinstance(e, Neg):
        return -_eval(e.arg, w)
    if isinstance(e, Mul):
        acc = _eval(e.args[0], w)
        for a in e.args[1:]:
            acc = acc * _eval(a, w)
        return acc
    if isinstance(e, Div):
        return _eval(e.num, w) / _eval(e.den, w)
    if isinstance(e, Log):
        return constants.log(_eval(e.arg, w))
    if isinstance(e, Atan):
        return constants.atan(_eval(e.arg, w))
    if isinstance(e, ReLi):
        return polylog_series("re", e.s, e.p, e.angle, w)
    if isinstance(e, ImLi):
        return polylog_series("im", e.s, e.p, e.angle, w)
    if isinstance(e, Cl2):
        angle = lattice_angle(e.arg)
        if angle is not None and (angle * 12).denominator == 1:
            return cl2(angle, w)
        return clausen2(_eval(e.arg, w), w)
    if isinstance(e, Catalan):
        return constants.catalan(w)
    raise TypeError(f"cannot evaluate {e!r}")


def eval_expr(e: Expr, prec: int) -> Real:
    """Evaluate ``e`` so that the returned radius is at most ``2**-prec``.

    Working precision starts 64 bits above ``prec`` and doubles its guard
    until the tracked radius is small enough.
    """
    guard = 64
    for _ in range(5):
        w = prec + guard
        r = _eval(e, w)
        if r.accuracy_bits() >= prec:
            return r
        guard *= 2
    raise ArithmeticError(f"could not reach {prec} bits (radius 2^{r.rad.bit_length() - r.prec})")
