"""Elementary constants and functions on :class:`~binbbp.exact.Real`.

Every routine works in integer fixed point with 32 or more guard bits and
returns an interval that provably contains the true value.  Unary functions
are evaluated at the (exact, dyadic) centre of their argument and then
widened by a Lipschitz bound over the argument interval.

None of these depend on a BBP-type formula: pi comes from Machin's
arctangent decomposition, log 2 from ``sum 1/(k 2^k)``, Catalan's constant
from an Euler-transformed alternating series.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

from ..exact import Real, sqrt_nat

GUARD = 32


def _atan_inv_fixed(n: int, w: int) -> tuple[int, int]:
    """``atan(1/n) * 2**w`` as (value, error bound in ulps)."""
    total = 0
    power = (1 << w) // n
    n2 = n * n
    k = 0
    while power:
        term = power // (2 * k + 1)
        total += -term if k & 1 else term
        power //= n2
        k += 1
    # each power carries <= 2 ulps of floor error, each quotient one more
    return total, 3 * (k + 1)


@lru_cache(maxsize=64)
def pi(prec: int) -> Real:
    """pi = 16 atan(1/5) - 4 atan(1/239)."""
    w = prec + GUARD
    a, ea = _atan_inv_fixed(5, w)
    b, eb = _atan_inv_fixed(239, w)
    return Real(16 * a - 4 * b, w, 16 * ea + 4 * eb).with_prec(prec)


@lru_cache(maxsize=64)
def ln2(prec: int) -> Real:
    """log 2 = sum_{k>=1} 1 / (k 2^k)."""
    w = prec + GUARD
    total = 0
    for k in range(1, w + 1):
        total += (1 << (w - k)) // k
    # w floor errors plus a tail below 2**-w
    return Real(total, w, w + 2).with_prec(prec)


@lru_cache(maxsize=64)
def sqrt2(prec: int) -> Real:
    return sqrt_nat(2, prec)


@lru_cache(maxsize=64)
def sqrt3(prec: int) -> Real:
    return sqrt_nat(3, prec)


# -- log ---------------------------------------------------------------------


def _log_center(man: int, prec: int) -> Real:
    """log(man * 2**-prec) for man > 0, at ``prec`` bits."""
    w = prec + GUARD
    e = man.bit_length() - prec  # value = m * 2**e with m in [1/2, 1)
    m = Real(man, man.bit_length()).with_prec(w)
    if m.man * m.man < (1 << (2 * w - 1)):  # m < 1/sqrt(2): rescale into [1/sqrt2, sqrt2)
        m = Real(m.man << 1, w)
        e -= 1
    z = (m - 1) / (m + 1)  # |z| <= 0.172
    z2 = z * z
    acc = z
    power = z
    k = 1
    while True:
        power = power * z2
        term = power / (2 * k + 1)
        if abs(term.man) + term.rad <= 1:
            break
        acc = acc + term
        k += 1
    # remaining tail: |z|^(2k+1) / (1 - z^2) with |z| < 1/5, absorbed by 2 ulps
    acc = acc.widen(2)
    return (acc * 2 + ln2(w) * e).with_prec(prec)


def log(x: Real) -> Real:
    """Natural logarithm; the argument interval must be positive."""
    if not x.is_positive():
        raise ValueError("log of a non-positive interval")
    p = x.prec
    core = _log_center(x.man, p)
    if x.rad == 0:
        return core
    lo = x.man - x.rad
    # |log'| <= 1 / lo on the interval
    return core.widen(-((-(x.rad << p)) // lo) + 1)


# -- atan ----------------------------------------------------------------------


def _atan_center(x: Real, halvings: int = 6) -> Real:
    """atan of an exact Real via argument halving and Taylor series."""
    p = x.prec
    w = p + GUARD + halvings
    if x.man == 0:
        return Real(0, p)
    neg = x.man < 0
    t = Real(abs(x.man), p).with_prec(w)
    invert = t.man > (1 << w)
    if invert:
        t = Real.from_int(1, w) / t
    for _ in range(halvings):
        t = t / ((t * t + 1).sqrt() + 1)
    t2 = t * t
    acc = t
    power = t
    k = 1
    while True:
        power = -(power * t2)
        term = power / (2 * k + 1)
        if abs(term.man) + term.rad <= 1:
            break
        acc = acc + term
        k += 1
    acc = acc.widen(2) * (1 << halvings)
    if invert:
        acc = pi(w) / 2 - acc
    return (-acc if neg else acc).with_prec(p)


def atan(x: Real) -> Real:
    core = _atan_center(Real(x.man, x.prec))
    return core.widen(x.rad) if x.rad else core


# -- Catalan, zeta(3) ----------------------------------------------------------


@lru_cache(maxsize=64)
def catalan(prec: int) -> Real:
    """G = sum (-1)^n / (2n+1)^2 via the Euler transform.

    The k-th transformed term is ``2**-(k+1) * sum_j (-1)^j C(k,j)/(2j+1)^2``,
    and that inner binomial sum equals ``c_k * h_k`` with
    ``c_k = 4^k k!^2 / (2k+1)!`` and ``h_k = sum_{i<=k} 1/(2i+1)``.
    """
    w = prec + GUARD
    one = 1 << w
    total = 0
    c = one  # c_k * 2**w
    h = one  # h_k * 2**w
    k = 0
    err = 0
    while True:
        term = (c * h >> w) >> (k + 1)
        if term == 0 and k > 8:
            break
        total += term
        k += 1
        c = c * (2 * k) // (2 * k + 1)
        h += one // (2 * k + 1)
        err += 2 * k + 4
    # terms beyond k are below (k + 3) 2**-(k+1) <= 2**-w once term is 0
    tail = (k + 3)
    return Real(total, w, err + tail).with_prec(prec)


@lru_cache(maxsize=64)
def zeta3(prec: int) -> Real:
    """zeta(3) = 5/2 sum_{k>=1} (-1)^(k+1) / (k^3 C(2k, k))."""
    w = prec + GUARD
    total = 0
    k = 1
    while True:
        term = (1 << w) // (k ** 3 * comb(2 * k, k))
        if term == 0:
            break
        total += term if k & 1 else -term
        k += 1
    return (Real(total, w, k + 1) * 5 / 2).with_prec(prec)


def exact_ratio(num: int, den: int, prec: int) -> Real:
    return Real.from_int(num, prec) / den
