"""The P-notation data model, rigorous evaluation, combination and documents.

``P(s, 2^m, l, A) = sum_{k>=0} 2^(-m k) sum_{j=1..l} a_j / (k l + j)^s``
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .exact import Real, sqrt_nat
from .reference import Expr, ExprSyntaxError, eval_expr, format_expr, parse_expr

__all__ = [
    "PFormula",
    "ScaledFormula",
    "ZeroRelation",
    "ZeroReport",
    "VerifyReport",
    "IncompatibleShapes",
    "FormulaParseError",
    "EVAL_GUARD",
    "eval_p",
    "eval_scaled",
    "terms_needed",
    "agreement_bits",
    "combine",
    "common_denominator",
    "is_zero_relation",
    "verify",
    "serialize",
    "parse",
    "to_document",
    "from_document",
]

EVAL_GUARD = 64


class IncompatibleShapes(ValueError):
    def __init__(self, msg: str = "incompatible shapes") -> None:
        super().__init__(msg)


@dataclass(frozen=True)
class PFormula:
    degree: int
    base_log2: int
    length: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        for name in ("degree", "base_log2", "length"):
            if not isinstance(getattr(self, name), int) or getattr(self, name) < 1:
                raise ValueError(f"{name} must be an integer >= 1")
        object.__setattr__(self, "coeffs", tuple(int(a) for a in self.coeffs))
        if len(self.coeffs) != self.length:
            raise ValueError(f"expected {self.length} coefficients, got {len(self.coeffs)}")

    @property
    def shape(self) -> tuple[int, int, int]:
        return (self.degree, self.base_log2, self.length)

    def is_trivial(self) -> bool:
        return not any(self.coeffs)

    def scaled_by(self, c: int) -> PFormula:
        return PFormula(self.degree, self.base_log2, self.length, tuple(c * a for a in self.coeffs))


@dataclass(frozen=True)
class ScaledFormula:
    """``lhs = scale * sqrt(3)**sqrt3_power * P(formula)``."""

    name: str
    p_param: int | None
    scale: Fraction
    sqrt3_power: int
    formula: PFormula
    lhs: Expr

    def __post_init__(self) -> None:
        object.__setattr__(self, "scale", Fraction(self.scale))
        if self.sqrt3_power not in (0, 1):
            raise ValueError("sqrt3_power must be 0 or 1")
        if self.p_param is not None and (self.p_param < 1 or self.p_param % 2 == 0):
            raise ValueError("p must be an odd positive integer")


@dataclass(frozen=True)
class ZeroRelation:
    name: str
    formula: PFormula


Document = Union[PFormula, ScaledFormula, ZeroRelation]


# -- evaluation ------------------------------------------------------------------


def terms_needed(f: PFormula, bits: int) -> int:
    """Smallest K whose tail after k = K is below ``2**-bits``.

    The tail bound is ``l max|a| / (b^(K+1) ((K+1) l + 1)^s (1 - 1/b))``.
    """
    amax = max((abs(a) for a in f.coeffs), default=0)
    if amax == 0:
        return 0
    m, l, s = f.base_log2, f.length, f.degree
    b = 1 << m
    num = l * amax * b << bits  # compare num < b^(K+1) ((K+1) l + 1)^s (b - 1)
    k = max(0, (bits + (l * amax).bit_length()) // m - 2)
    while num >= (1 << (m * (k + 1))) * ((k + 1) * l + 1) ** s * (b - 1):
        k += 1
    return k


def _column_sum(a: int, j: int, s: int, m: int, l: int, w: int, last: int) -> int:
    total = 0
    num = a << w
    for k in range(last + 1):
        total += (num >> (m * k)) // (k * l + j) ** s if m * k <= w else (a << w) // ((k * l + j) ** s << (m * k))
    return total


def _column_task(args: tuple[int, int, int, int, int, int, int]) -> int:
    return _column_sum(*args)


def eval_p(f: PFormula, prec_bits: int, *, workers: int = 1) -> Real:
    """P(f) with radius covering truncation and rounding, at ``prec_bits + 64`` bits.

    Columns (one per ``j``) are exact integer sums, so splitting them over
    processes cannot change the result.
    """
    if prec_bits < 16:
        raise ValueError("prec_bits must be >= 16")
    w = prec_bits + EVAL_GUARD
    if f.is_trivial():
        return Real(0, w, 0)
    last = terms_needed(f, w)
    s, m, l = f.degree, f.base_log2, f.length
    jobs = [(a, j, s, m, l, w, last) for j, a in enumerate(f.coeffs, start=1) if a]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_column_task, jobs))
    else:
        parts = [_column_task(job) for job in jobs]
    # each floor division is off by < 1 ulp; the tail adds < 1 more
    return Real(sum(parts), w, len(jobs) * (last + 1) + 1)


def _sqrt3(prec: int) -> Real:
    return sqrt_nat(3, prec)


def eval_scaled(sf: ScaledFormula, prec_bits: int, *, workers: int = 1) -> Real:
    """The right-hand side ``scale * sqrt3^t * P``."""
    w = prec_bits + 16
    value = eval_p(sf.formula, w, workers=workers) * sf.scale.numerator / sf.scale.denominator
    if sf.sqrt3_power:
        value = value * _sqrt3(value.prec + 8)
    return value


# -- combination -------------------------------------------------------------------


def common_denominator(terms: Iterable[tuple[Fraction | int, PFormula]]) -> int:
    return math.lcm(*(Fraction(c).denominator for c, _ in terms)) or 1


def combine(terms: Sequence[tuple[Fraction | int, PFormula]]) -> PFormula:
    """The integer formula ``d * sum c_i P_i`` with ``d`` the common denominator."""
    if not terms:
        raise ValueError("combine needs at least one term")
    shape = terms[0][1].shape
    if any(f.shape != shape for _, f in terms):
        raise IncompatibleShapes()
    d = common_denominator(terms)
    out = [0] * shape[2]
    for c, f in terms:
        c = Fraction(c) * d
        for i, a in enumerate(f.coeffs):
            out[i] += int(c * a)
    return PFormula(*shape, tuple(out))


# -- checks ----------------------------------------------------------------------------


@dataclass(frozen=True)
class ZeroReport:
    name: str
    is_zero: bool
    prec_bits: int
    value: Real
    value_log2: float
    radius_log2: float

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "is_zero": self.is_zero,
            "prec_bits": self.prec_bits,
            "value_log2": _fmt_log2(self.value_log2),
            "radius_log2": _fmt_log2(self.radius_log2),
        }


def _log2_ulps(n: int, prec: int) -> float:
    return math.log2(n) - prec if n else float("-inf")


def _fmt_log2(x: float) -> float | str:
    return "-inf" if x == float("-inf") else round(x, 3)


def is_zero_relation(f: PFormula | ZeroRelation, prec_bits: int, *, workers: int = 1) -> ZeroReport:
    """Zero iff ``|P| <= 2 * radius`` at the requested precision."""
    if prec_bits < 64:
        raise ValueError("prec_bits must be >= 64")
    name = f.name if isinstance(f, ZeroRelation) else ""
    formula = f.formula if isinstance(f, ZeroRelation) else f
    v = eval_p(formula, prec_bits, workers=workers)
    return ZeroReport(
        name=name,
        is_zero=abs(v.man) <= 2 * v.rad,
        prec_bits=prec_bits,
        value=v,
        value_log2=_log2_ulps(abs(v.man), v.prec),
        radius_log2=_log2_ulps(v.rad, v.prec),
    )


@dataclass(frozen=True)
class VerifyReport:
    name: str
    prec_bits: int
    lhs: Real
    rhs: Real
    agreement_bits: int
    passed: bool = field(default=False)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "prec_bits": self.prec_bits,
            "lhs": _decimal(self.lhs, self.prec_bits),
            "rhs": _decimal(self.rhs, self.prec_bits),
            "agreement_bits": self.agreement_bits,
            "status": "PASS" if self.passed else "FAIL",
        }


def _decimal(x: Real, bits: int) -> str:
    """Decimal rendering good to about ``bits`` bits, for reports."""
    digits = max(1, int(bits * 0.30103))
    c = x.center()
    sign = "-" if c < 0 else ""
    c = abs(c)
    whole = int(c)
    frac = (c - whole) * 10 ** digits
    return f"{sign}{whole}.{int(frac):0{digits}d}"


def agreement_bits(a: Real, b: Real) -> int:
    """Bits to which two intervals are certified to agree (capped at their precision)."""
    d = a - b
    upper = abs(d.man) + d.rad
    if upper == 0:
        return d.prec
    return d.prec - upper.bit_length()


def verify(sf: ScaledFormula, prec_bits: int, *, margin: int = 8, workers: int = 1) -> VerifyReport:
    """Evaluate both sides independently; PASS when they agree to ``prec_bits - margin``."""
    lhs = eval_expr(sf.lhs, prec_bits + 8)
    rhs = eval_scaled(sf, prec_bits + 8, workers=workers)
    agree = min(agreement_bits(lhs, rhs), prec_bits)
    return VerifyReport(sf.name, prec_bits, lhs, rhs, agree, agree >= prec_bits - margin)


# -- documents ---------------------------------------------------------------------


class FormulaParseError(ValueError):
    def __init__(self, msg: str, pos: int) -> None:
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


def to_document(x: Document) -> dict:
    """Canonical, key-ordered dictionary for a formula."""
    if isinstance(x, ScaledFormula):
        doc: dict = {"kind": "scaled", "name": x.name, "p": x.p_param}
        f = x.formula
    elif isinstance(x, ZeroRelation):
        doc = {"kind": "zero", "name": x.name}
        f = x.formula
    elif isinstance(x, PFormula):
        doc = {"kind": "pformula"}
        f = x
    else:
        raise TypeError(f"cannot serialize {type(x).__name__}")
    doc.update(
        degree=f.degree,
        base_log2=f.base_log2,
        length=f.length,
        coefficients=[str(a) for a in f.coeffs],
    )
    if isinstance(x, ScaledFormula):
        doc.update(
            scale=f"{x.scale.numerator}/{x.scale.denominator}",
            sqrt3_power=x.sqrt3_power,
            lhs=format_expr(x.lhs),
        )
    return doc


def serialize(x: Document) -> str:
    return json.dumps(to_document(x), indent=2) + "\n"


_KEYS = {
    "pformula": ("kind", "degree", "base_log2", "length", "coefficients"),
    "zero": ("kind", "name", "degree", "base_log2", "length", "coefficients"),
    "scaled": ("kind", "name", "p", "degree", "base_log2", "length", "coefficients",
               "scale", "sqrt3_power", "lhs"),
}


def _key_pos(text: str, key: str) -> int:
    i = text.find(f'"{key}"')
    return max(i, 0)


def from_document(doc: dict, text: str = "") -> Document:
    def fail(msg: str, key: str | None = None) -> FormulaParseError:
        return FormulaParseError(msg, _key_pos(text, key) if key else 0)

    if not isinstance(doc, dict):
        raise fail("document must be an object")
    kind = doc.get("kind")
    if kind not in _KEYS:
        raise fail(f"unknown kind {kind!r}", "kind")
    expected = _KEYS[kind]
    for key in expected:
        if key not in doc:
            raise fail(f"missing field {key!r}")
    for key in doc:
        if key not in expected:
            raise fail(f"unexpected field {key!r}", key)

    def int_field(key: str) -> int:
        v = doc[key]
        if not isinstance(v, int) or isinstance(v, bool):
            raise fail(f"{key} must be an integer", key)
        return v

    coeffs = doc["coefficients"]
    if not isinstance(coeffs, list) or not all(isinstance(c, str) for c in coeffs):
        raise fail("coefficients must be a list of decimal strings", "coefficients")
    try:
        values = tuple(int(c) for c in coeffs)
    except ValueError:
        raise fail("coefficient is not a decimal integer", "coefficients") from None
    try:
        f = PFormula(int_field("degree"), int_field("base_log2"), int_field("length"), values)
    except ValueError as exc:
        raise fail(str(exc), "degree") from None
    if kind == "pformula":
        return f
    name = doc["name"]
    if not isinstance(name, str):
        raise fail("name must be a string", "name")
    if kind == "zero":
        return ZeroRelation(name, f)
    p = doc["p"]
    if p is not None and (not isinstance(p, int) or isinstance(p, bool)):
        raise fail("p must be an integer or null", "p")
    try:
        scale = Fraction(doc["scale"])
    except (TypeError, ValueError, ZeroDivisionError):
        raise fail("scale must be 'num/den'", "scale") from None
    lhs_text = doc["lhs"]
    if not isinstance(lhs_text, str):
        raise fail("lhs must be a string", "lhs")
    try:
        lhs = parse_expr(lhs_text)
    except ExprSyntaxError as exc:
        # point into the document: start of the lhs string plus the offset inside it
        base = text.find(json.dumps(lhs_text)) + 1 if text else 0
        raise FormulaParseError(f"lhs: {exc.args[0]}", max(base, 0) + exc.pos) from None
    try:
        return ScaledFormula(name, p, scale, int_field("sqrt3_power"), f, lhs)
    except ValueError as exc:
        raise fail(str(exc), "sqrt3_power") from None


def parse(text: str) -> Document:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormulaParseError(exc.msg, exc.pos) from None
    return from_document(doc, text)
