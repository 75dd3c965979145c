"""Clausen-type sums, Bernoulli polynomials and the Gl closed form.

Two independent routes are provided for the Clausen values the formulas
need:

* series in the argument: ``Cl_2(t) = t - t log|t| + sum |B_2n| t^(2n+1) / (2n (2n+1)!)``
  (and its integral for ``Cl_3``), valid on ``|t| <= pi``;
* direct periodic sums ``sum trig(k x) / k^n`` on the pi/12 lattice, split
  by residue class and closed with an Euler-Maclaurin remainder.

Values at multiples of pi/6 additionally come from the classical chain
through Catalan's constant and ``Im Li_2(exp(i pi/3) / 2)``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from ..exact import Real
from .constants import catalan, ln2, log, pi, zeta3
from .polylog import polylog_series
from .trig import lattice_index, trig_table

GUARD = 32

_bernoulli_cache: list[Fraction] = [Fraction(1)]


def bernoulli_number(n: int) -> Fraction:
    """B_n with B_1 = -1/2, from ``sum_{k<=n} C(n+1, k) B_k = 0``."""
    cache = _bernoulli_cache
    while len(cache) <= n:
        m = len(cache)
        if m > 1 and m & 1:
            cache.append(Fraction(0))
            continue
        acc = sum((comb(m + 1, k) * cache[k] for k in range(m) if cache[k]), Fraction(0))
        cache.append(-acc / (m + 1))
    return cache[n]


def bernoulli_poly(n: int, x: Fraction | int) -> Fraction:
    """B_n(x) = sum_k C(n, k) B_k x^(n-k), exact."""
    if n < 0:
        raise ValueError("n must be non-negative")
    x = Fraction(x)
    return sum((comb(n, k) * bernoulli_number(k) * x ** (n - k) for k in range(n + 1)), Fraction(0))


# -- series in the argument -----------------------------------------------------


@lru_cache(maxsize=None)
def _cl2_coeff(n: int) -> tuple[int, int]:
    """|B_2n| / (2n (2n+1)!) as (numerator, denominator)."""
    c = abs(bernoulli_number(2 * n)) / (2 * n * factorial(2 * n + 1))
    return c.numerator, c.denominator


def _reduce_angle(theta: Real, w: int) -> Real:
    """theta - 2 pi round(theta / 2 pi), landing in about [-pi, pi]."""
    turns = round(float(theta) / (2 * math.pi))
    return theta - pi(w) * (2 * turns) if turns else theta.with_prec(min(theta.prec, w))


def _near_zero_bound(t: Real) -> Real:
    # |Cl_2(u)| <= |u| (1 + |log|u||) + |u|^3 for |u| <= 1
    u = float(abs(t.man) + t.rad) / 2.0 ** t.prec
    b = u * (1 + abs(math.log(u))) + u ** 3 if u > 0 else 0.0
    return Real(0, t.prec, int(b * 2.0 ** t.prec) + 1)


def clausen2(theta: Real, prec: int) -> Real:
    """Cl_2(theta) for any real theta."""
    w = prec + GUARD
    t = _reduce_angle(theta.with_prec(min(theta.prec, w + 8)), w)
    if t.sign() == 0:
        return _near_zero_bound(t)
    neg = t.is_negative()
    t = abs(t)
    t2 = t * t
    acc = t - t * log(t)
    power = t
    n = 0
    while True:
        n += 1
        num, den = _cl2_coeff(n)
        power = power * t2
        term = power * num / den
        if abs(term.man) + term.rad <= 8:
            break
        acc = acc + term
    # ratio of successive terms < (t / 2pi)^2 <= 0.26, so the tail is < 11 ulp
    acc = acc.widen(11)
    return -acc if neg else acc


def clausen3(theta: Real, prec: int) -> Real:
    """Cl_3(theta) = sum cos(k theta)/k^3 = zeta(3) - int_0^theta Cl_2."""
    w = prec + GUARD
    t = abs(_reduce_angle(theta.with_prec(min(theta.prec, w + 8)), w))
    if t.sign() == 0:
        return zeta3(w).widen(int(float(t.rad) + 1) if t.rad else 0)
    t2 = t * t
    acc = zeta3(w) - t2 * Fraction(3, 4) + t2 * log(t) / 2
    power = t2
    n = 0
    while True:
        n += 1
        num, den = _cl2_coeff(n)
        power = power * t2
        term = power * num / (den * (2 * n + 2))
        if abs(term.man) + term.rad <= 8:
            break
        acc = acc - term
    return acc.widen(11)


# -- lattice values ---------------------------------------------------------------


@lru_cache(maxsize=64)
def _cl2_pi3(w: int) -> Real:
    # 6 Im Li_2(exp(i pi/3)/2) = 5 Cl_2(pi/3) - pi log 2
    im = polylog_series("im", 2, 2, Fraction(1, 3), w)
    return (im * 6 + pi(w) * ln2(w)) / 5


def cl2(angle: Fraction | int, prec: int) -> Real:
    """Cl_2(angle * pi) for an angle on the pi/12 lattice.

    Multiples of pi/6 go through Catalan's constant and Cl_2(pi/3)::

        Cl2(x) - Cl2(pi - x) = Cl2(2x)/2,   Cl2(pi/6) + Cl2(5pi/6) = 4G/3

    the remaining lattice points through :func:`clausen2`.
    """
    k = lattice_index(Fraction(angle))
    w = prec + GUARD
    sign = 1
    if k > 12:
        k, sign = 24 - k, -1
    if k in (0, 12):
        return Real(0, w)
    if k % 2:
        return clausen2(pi(w + 8) * Fraction(k, 12), prec) * sign
    c3 = _cl2_pi3(w)
    g = catalan(w)
    value = {
        2: g * Fraction(2, 3) + c3 / 4,
        4: c3,
        6: g,
        8: c3 * Fraction(2, 3),
        10: g * Fraction(2, 3) - c3 / 4,
    }[k]
    return value * sign


# -- direct periodic sums -----------------------------------------------------------


def _residue_sum(n: int, c: int, period: int, w: int) -> Real:
    """sum_{m>=0} (period*m + c)^-n, with an Euler-Maclaurin remainder."""
    big_m = max(32, w // 3)
    one = 1 << w
    head = 0
    for m in range(big_m):
        head += one // (period * m + c) ** n
    u = period * big_m + c  # f(t) = (period t + c)^-n, derivatives at t = M
    tail = Fraction(1, period * (n - 1) * u ** (n - 1)) + Fraction(1, 2 * u ** n)
    rising = n  # (n)_(2j-1)
    j = 1
    while True:
        r = 2 * j - 1
        if j > 1:
            rising *= (n + r - 2) * (n + r - 1)
        deriv = Fraction(-(period ** r) * rising, u ** (n + r))  # f^(2j-1)(M)
        tail -= bernoulli_number(2 * j) / factorial(2 * j) * deriv
        # |R_j| <= 2 zeta(2j) / (2 pi)^(2j) * |f^(2j-1)(M)|, zeta(2j) <= 2, pi > 3
        bound = Fraction(4, 6 ** (2 * j)) * abs(deriv)
        if bound * one < 1:
            break
        j += 1
    return Real(head, w, big_m) + Real.from_fraction(tail, w).widen(2)


def periodic_series(n: int, kind: str, angle: Fraction | int, prec: int) -> Real:
    """``sum_{k>=1} trig(k x) / k^n`` for x = angle*pi on the pi/12 lattice, n >= 2."""
    if n < 2:
        raise ValueError("periodic_series needs n >= 2")
    idx = {"cos": 0, "sin": 1}[kind]
    k0 = lattice_index(Fraction(angle))
    w = prec + GUARD
    table = trig_table()
    total = Real(0, w)
    for c in range(1, 25):
        coef = table[(c * k0) % 24][idx]
        if coef.a == coef.b == coef.c == coef.d == 0:
            continue
        total = total + _residue_sum(n, c, 24, w) * coef.to_real(w)
    return total


def clausen_lattice(n: int, angle: Fraction | int, prec: int) -> Real:
    """Cl_n on the lattice by direct summation: sine sum for even n, cosine for odd."""
    return periodic_series(n, "sin" if n % 2 == 0 else "cos", angle, prec)


# -- Gl closed form -----------------------------------------------------------------


def gl_closed(n: int, angle: Fraction | int, prec: int) -> Real:
    """Gl_2n(x) = (-1)^(n+1) (2 pi)^(2n) B_2n(x / 2pi) / (2 (2n)!), x = angle*pi."""
    if n < 1:
        raise ValueError("n must be >= 1")
    y = Fraction(angle) / 2
    if not 0 <= y <= 1:
        raise ValueError("x must lie in [0, 2 pi]")
    w = prec + GUARD
    coef = (-1) ** (n + 1) * 2 ** (2 * n) * bernoulli_poly(2 * n, y) / (2 * factorial(2 * n))
    return pi(w + 16) ** (2 * n) * coef


def gl_variant(n: int, angle: Fraction | int, prec: int) -> Real:
    """The variant ``(-1)^(1+[n/2]) 2^(n-1) pi^n B_n(x/2pi) / n!``.

    For even n this equals Gl_n(x) (not Gl_2n); see :func:`gl_variant_report`.
    """
    y = Fraction(angle) / 2
    w = prec + GUARD
    coef = (-1) ** (1 + n // 2) * 2 ** (n - 1) * bernoulli_poly(n, y) / factorial(n)
    return pi(w + 16) ** n * coef


def gl_variant_report(n: int, angle: Fraction | int, prec: int) -> dict:
    """Compare the variant form against Gl_2n and Gl_n (n even) by direct summation."""
    variant = gl_variant(n, angle, prec)
    as_2n = periodic_series(2 * n, "cos", angle, prec)
    out = {
        "n": n,
        "angle": str(Fraction(angle)),
        "variant": float(variant),
        "gl_2n_series": float(as_2n),
        "deviation_from_gl_2n": float(variant - as_2n),
    }
    if n % 2 == 0:
        as_n = periodic_series(n, "cos", angle, prec)
        out["gl_n_series"] = float(as_n)
        out["deviation_from_gl_n"] = float(variant - as_n)
    return out


# -- duplication ------------------------------------------------------------------------


def cl_duplication_check(n: int, m: int, angle: Fraction | int, prec: int) -> bool:
    """Check ``Cl_n(m x) / m^(n-1) = sum_{r<m} Cl_n(x + 2 pi r / m)``."""
    if n < 2 or m < 1:
        raise ValueError("need n >= 2 and m >= 1")
    x = Fraction(angle)
    points = [x + Fraction(2 * r, m) for r in range(m)]
    for q in points + [m * x]:
        lattice_index(q)  # raises off-lattice

    def value(q: Fraction) -> Real:
        return cl2(q, prec) if n == 2 else clausen_lattice(n, q, prec)

    lhs = value(m * x) / m ** (n - 1)
    rhs = Real(0, prec + GUARD)
    for q in points:
        rhs = rhs + value(q)
    diff = lhs - rhs
    return abs(diff.man) <= diff.rad
