"""Exact cos/sin of multiples of pi/12 in Q(sqrt2, sqrt3)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..exact import Real, sqrt_nat


@dataclass(frozen=True, slots=True)
class Surd:
    """``(a + b*sqrt2 + c*sqrt3 + d*sqrt6) / den`` with rational parts."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    c: Fraction = Fraction(0)
    d: Fraction = Fraction(0)

    @classmethod
    def quarter(cls, a: int, b: int, c: int, d: int) -> Surd:
        return cls(Fraction(a, 4), Fraction(b, 4), Fraction(c, 4), Fraction(d, 4))

    def __add__(self, o: Surd) -> Surd:
        return Surd(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    def __neg__(self) -> Surd:
        return Surd(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, o: Surd) -> Surd:
        return self + (-o)

    def __mul__(self, o: Surd | Fraction | int) -> Surd:
        if not isinstance(o, Surd):
            o = Fraction(o)
            return Surd(self.a * o, self.b * o, self.c * o, self.d * o)
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = o.a, o.b, o.c, o.d
        # basis products: s2*s2=2, s3*s3=3, s6*s6=6, s2*s3=s6, s2*s6=2 s3, s3*s6=3 s2
        return Surd(
            a1 * a2 + 2 * b1 * b2 + 3 * c1 * c2 + 6 * d1 * d2,
            a1 * b2 + b1 * a2 + 3 * (c1 * d2 + d1 * c2),
            a1 * c2 + c1 * a2 + 2 * (b1 * d2 + d1 * b2),
            a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2,
        )

    __rmul__ = __mul__

    def times_sqrt2(self) -> Surd:
        return Surd(2 * self.b, self.a, 2 * self.d, self.c)

    def is_rational(self) -> bool:
        return self.b == self.c == self.d == 0

    def is_rational_times_sqrt3(self) -> bool:
        return self.a == self.b == self.d == 0

    def to_real(self, prec: int) -> Real:
        out = Real.from_fraction(self.a, prec)
        for coef, n in ((self.b, 2), (self.c, 3), (self.d, 6)):
            if coef:
                out = out + sqrt_nat(n, prec + 8).with_prec(prec) * coef
        return out

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * 2 ** 0.5 + float(self.c) * 3 ** 0.5 + float(self.d) * 6 ** 0.5


# cos(k pi / 12) for k = 0..6, as 4*cos = a + b s2 + c s3 + d s6
_FIRST_QUADRANT = (
    (4, 0, 0, 0),
    (0, 1, 0, 1),
    (0, 0, 2, 0),
    (0, 2, 0, 0),
    (2, 0, 0, 0),
    (0, -1, 0, 1),
    (0, 0, 0, 0),
)


@lru_cache(maxsize=None)
def trig_table() -> tuple[tuple[Surd, Surd], ...]:
    """``(cos(k pi/12), sin(k pi/12))`` for k = 0..23."""
    cos = []
    for k in range(24):
        r = k % 24
        if r <= 6:
            cos.append(Surd.quarter(*_FIRST_QUADRANT[r]))
        elif r <= 12:
            cos.append(-Surd.quarter(*_FIRST_QUADRANT[12 - r]))
        elif r <= 18:
            cos.append(-Surd.quarter(*_FIRST_QUADRANT[r - 12]))
        else:
            cos.append(Surd.quarter(*_FIRST_QUADRANT[24 - r]))
    return tuple((cos[k], cos[(6 - k) % 24]) for k in range(24))


def lattice_index(angle: Fraction) -> int:
    """Index k with ``angle*pi = k*pi/12 (mod 2 pi)``; angle is in units of pi."""
    twelfths = Fraction(angle) * 12
    if twelfths.denominator != 1:
        raise ValueError(f"angle {angle}*pi is not on the pi/12 lattice")
    return int(twelfths) % 24


def cos_pi(angle: Fraction) -> Surd:
    return trig_table()[lattice_index(angle)][0]


def sin_pi(angle: Fraction) -> Surd:
    return trig_table()[lattice_index(angle)][1]
