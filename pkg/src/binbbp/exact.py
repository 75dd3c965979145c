"""Fixed-point reals with an explicit error radius.

A :class:`Real` stores ``man * 2**-prec`` together with a radius ``rad``
counted in units of ``2**-prec``.  The represented quantity is guaranteed
to lie in ``[man - rad, man + rad] * 2**-prec``; every operation below keeps
that containment.  Integers are Python ``int`` and rationals are
:class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

__all__ = [
    "Real",
    "IndeterminateDivision",
    "sqrt_nat",
    "pow2_scale",
    "to_real",
]


class IndeterminateDivision(ArithmeticError):
    """Divisor interval contains zero."""

    def __init__(self, msg: str = "indeterminate division") -> None:
        super().__init__(msg)


def _cdiv(a: int, b: int) -> int:
    return -((-a) // b)


def _round_shift(x: int, k: int) -> int:
    """``x / 2**k`` rounded to nearest (k >= 0)."""
    if k <= 0:
        return x << -k
    return (x + (1 << (k - 1))) >> k


Operand = Union["Real", int, Fraction]


@dataclass(frozen=True, slots=True)
class Real:
    man: int
    prec: int
    rad: int = 0

    def __post_init__(self) -> None:
        if self.rad < 0:
            raise ValueError("negative radius")

    # construction ----------------------------------------------------------

    @classmethod
    def from_int(cls, n: int, prec: int) -> Real:
        return cls(n << prec, prec, 0) if prec >= 0 else cls.from_fraction(Fraction(n), prec)

    @classmethod
    def from_fraction(cls, q: Fraction, prec: int) -> Real:
        q = Fraction(q)
        num, den = q.numerator, q.denominator
        if prec >= 0:
            num <<= prec
        else:
            den <<= -prec
        man, r = divmod(num, den)
        if r == 0:
            return cls(man, prec, 0)
        if 2 * r >= den:
            man += 1
        return cls(man, prec, 1)

    # inspection ------------------------------------------------------------

    @property
    def exact(self) -> bool:
        return self.rad == 0

    def center(self) -> Fraction:
        return Fraction(self.man) / (1 << self.prec) if self.prec >= 0 else Fraction(self.man << -self.prec)

    def lower(self) -> Fraction:
        return Real(self.man - self.rad, self.prec).center()

    def upper(self) -> Fraction:
        return Real(self.man + self.rad, self.prec).center()

    def radius(self) -> Fraction:
        return Real(self.rad, self.prec).center()

    def contains(self, q: Fraction | int) -> bool:
        return self.lower() <= q <= self.upper()

    def is_positive(self) -> bool:
        return self.man - self.rad > 0

    def is_negative(self) -> bool:
        return self.man + self.rad < 0

    def sign(self) -> int:
        """Certified sign, or 0 if the interval touches zero."""
        if self.is_positive():
            return 1
        if self.is_negative():
            return -1
        return 0

    def accuracy_bits(self) -> int:
        """Number of fractional bits guaranteed by the radius."""
        if self.rad == 0:
            return 1 << 30
        return self.prec - self.rad.bit_length()

    def __float__(self) -> float:
        return float(self.center())

    def __repr__(self) -> str:
        return f"Real({float(self)!r} +/- 2^{self.rad.bit_length() - self.prec}, prec={self.prec})"

    # precision handling ------------------------------------------------------

    def with_prec(self, prec: int) -> Real:
        """Round to ``prec`` fractional bits (exact when increasing)."""
        d = self.prec - prec
        if d <= 0:
            return Real(self.man << -d, prec, self.rad << -d)
        man = _round_shift(self.man, d)
        lossy = (man << d) != self.man
        return Real(man, prec, _cdiv(self.rad, 1 << d) + (1 if lossy else 0))

    def widen(self, extra_ulps: int) -> Real:
        return Real(self.man, self.prec, self.rad + extra_ulps)

    def _coerce(self, other: Operand) -> Real:
        if isinstance(other, Real):
            return other
        if isinstance(other, int):
            return Real.from_int(other, self.prec)
        if isinstance(other, Fraction):
            return Real.from_fraction(other, self.prec)
        return NotImplemented

    @staticmethod
    def _align(x: Real, y: Real) -> tuple[Real, Real, int]:
        p = min(x.prec, y.prec)
        return x.with_prec(p), y.with_prec(p), p

    # arithmetic --------------------------------------------------------------

    def __neg__(self) -> Real:
        return Real(-self.man, self.prec, self.rad)

    def __abs__(self) -> Real:
        return self if self.man >= 0 else -self

    def __add__(self, other: Operand) -> Real:
        if isinstance(other, int):
            return Real(self.man + (other << self.prec), self.prec, self.rad) if self.prec >= 0 else self + Real.from_int(other, self.prec)
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        x, y, p = self._align(self, o)
        return Real(x.man + y.man, p, x.rad + y.rad)

    __radd__ = __add__

    def __sub__(self, other: Operand) -> Real:
        return self + (-other)

    def __rsub__(self, other: Operand) -> Real:
        return (-self) + other

    def __mul__(self, other: Operand) -> Real:
        if isinstance(other, int):
            return Real(self.man * other, self.prec, self.rad * abs(other))
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        x, y, p = self._align(self, o)
        prod = x.man * y.man
        err = abs(x.man) * y.rad + abs(y.man) * x.rad + x.rad * y.rad
        if p <= 0:
            return Real(prod << -p, p, err << -p) if p < 0 else Real(prod, 0, err)
        man = _round_shift(prod, p)
        lossy = (man << p) != prod
        return Real(man, p, _cdiv(err, 1 << p) + (1 if lossy else 0))

    __rmul__ = __mul__

    def __truediv__(self, other: Operand) -> Real:
        if isinstance(other, int):
            if other == 0:
                raise IndeterminateDivision()
            q, r = divmod(self.man, other)
            if r and 2 * abs(r) >= abs(other):
                q += 1
            return Real(q, self.prec, _cdiv(self.rad, abs(other)) + (1 if r else 0))
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        x, y, p = self._align(self, o)
        b = abs(y.man)
        if b - y.rad <= 0:
            raise IndeterminateDivision()
        a = x.man if y.man > 0 else -x.man
        num = a << p if p >= 0 else a
        den = b if p >= 0 else b << -p
        q, r = divmod(num, den)
        if r and 2 * r >= den:
            q += 1
        # |a/b - (a+-ra)/(b+-rb)| <= (ra*b + |a|*rb) / (b*(b - rb)), scaled by 2**p
        err_num = (x.rad * b + abs(x.man) * y.rad) * ((1 << p) if p >= 0 else 1)
        err_den = b * (b - y.rad) * (1 if p >= 0 else (1 << -p))
        return Real(q, p, _cdiv(err_num, err_den) + (1 if r else 0))

    def __rtruediv__(self, other: Operand) -> Real:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __pow__(self, n: int) -> Real:
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = Real.from_int(1, self.prec)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def sqrt(self) -> Real:
        """Square root; the interval may touch zero but not go below it."""
        if self.man + self.rad < 0:
            raise ValueError("sqrt of negative interval")
        p = self.prec
        lo = self.man - self.rad
        c = max(self.man, 0)
        s = math.isqrt(c << p)  # floor(sqrt(c * 2**-p) * 2**p)
        if lo <= 0:
            hi = math.isqrt((self.man + self.rad) << p) + 1
            return Real(s, p, max(hi - s, s) + 1)
        s_lo = math.isqrt(lo << p)
        # derivative of sqrt on [lo, hi] is at most 1 / (2 sqrt(lo))
        prop = _cdiv(self.rad << p, 2 * max(s_lo, 1)) if self.rad else 0
        return Real(s, p, prop + (0 if s * s == c << p else 1))


def to_real(x: Operand, prec: int) -> Real:
    if isinstance(x, Real):
        return x
    if isinstance(x, int):
        return Real.from_int(x, prec)
    return Real.from_fraction(Fraction(x), prec)


def sqrt_nat(n: int, prec_bits: int) -> Real:
    """``sqrt(n)`` to ``prec_bits`` fractional bits; exact for perfect squares."""
    if n < 1:
        raise ValueError("sqrt_nat needs n >= 1")
    s = math.isqrt(n << (2 * prec_bits))
    return Real(s, prec_bits, 0 if s * s == n << (2 * prec_bits) else 1)


def pow2_scale(x: Real, e: int) -> Real:
    """Exact multiplication by ``2**e``."""
    if e >= 0:
        return Real(x.man << e, x.prec, x.rad << e)
    return Real(x.man, x.prec - e, x.rad)
