"""Expression trees for left-hand-side constants, and their text form.

The text form is prefix notation with named heads, e.g.::

    mul(sqrt(3), log(add(2, sqrt(3))))
    imli(2, 2, 1/3*pi)
    add(mul(-1/2, log(2)), cl2(mul(2, atan(div(sqrt(3), 3)))))

Atoms are integers (``3``), rationals (``-1/2``), rational multiples of pi
(``1/12*pi``), ``pi`` and ``catalan``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

__all__ = [
    "Expr", "IntLit", "RatLit", "Pi", "PiMul", "Sqrt", "Pow2", "Add", "Neg",
    "Mul", "Div", "Log", "Atan", "ReLi", "ImLi", "Cl2", "Catalan",
    "ExprSyntaxError", "parse_expr", "format_expr", "lit", "lattice_angle",
]


class Expr:
    """Base node.  Arithmetic operators build new trees without simplifying."""

    __slots__ = ()

    def __add__(self, other: ExprLike) -> Expr:
        return Add((self, lit(other)))

    def __radd__(self, other: ExprLike) -> Expr:
        return Add((lit(other), self))

    def __sub__(self, other: ExprLike) -> Expr:
        return Add((self, Neg(lit(other))))

    def __rsub__(self, other: ExprLike) -> Expr:
        return Add((lit(other), Neg(self)))

    def __mul__(self, other: ExprLike) -> Expr:
        return Mul((self, lit(other)))

    def __rmul__(self, other: ExprLike) -> Expr:
        return Mul((lit(other), self))

    def __truediv__(self, other: ExprLike) -> Expr:
        return Div(self, lit(other))

    def __rtruediv__(self, other: ExprLike) -> Expr:
        return Div(lit(other), self)

    def __neg__(self) -> Expr:
        return Neg(self)

    def __str__(self) -> str:
        return format_expr(self)


ExprLike = Union[Expr, int, Fraction]


@dataclass(frozen=True, slots=True)
class IntLit(Expr):
    value: int


@dataclass(frozen=True, slots=True)
class RatLit(Expr):
    value: Fraction


@dataclass(frozen=True, slots=True)
class Pi(Expr):
    pass


@dataclass(frozen=True, slots=True)
class PiMul(Expr):
    """``coef * pi`` as an exact angle."""

    coef: Fraction


@dataclass(frozen=True, slots=True)
class Sqrt(Expr):
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("sqrt needs a positive integer")


@dataclass(frozen=True, slots=True)
class Pow2(Expr):
    """``2**e`` for an integer or half-integer ``e``."""

    e: Fraction

    def __post_init__(self) -> None:
        if (2 * Fraction(self.e)).denominator != 1:
            raise ValueError("pow2 exponent must be a half-integer")


@dataclass(frozen=True, slots=True)
class Add(Expr):
    args: tuple[Expr, ...]


@dataclass(frozen=True, slots=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True, slots=True)
class Mul(Expr):
    args: tuple[Expr, ...]


@dataclass(frozen=True, slots=True)
class Div(Expr):
    num: Expr
    den: Expr


@dataclass(frozen=True, slots=True)
class Log(Expr):
    arg: Expr


@dataclass(frozen=True, slots=True)
class Atan(Expr):
    arg: Expr


@dataclass(frozen=True, slots=True)
class ReLi(Expr):
    """Re Li_s(2^(-p/2) exp(i angle pi))."""

    s: int
    p: int
    angle: Fraction

    def __post_init__(self) -> None:
        if self.s < 1 or self.p < 1:
            raise ValueError("polylog node needs s >= 1 and p >= 1")


@dataclass(frozen=True, slots=True)
class ImLi(Expr):
    """Im Li_s(2^(-p/2) exp(i angle pi))."""

    s: int
    p: int
    angle: Fraction

    def __post_init__(self) -> None:
        if self.s < 1 or self.p < 1:
            raise ValueError("polylog node needs s >= 1 and p >= 1")


@dataclass(frozen=True, slots=True)
class Cl2(Expr):
    arg: Expr


@dataclass(frozen=True, slots=True)
class Catalan(Expr):
    pass


def lit(x: ExprLike) -> Expr:
    if isinstance(x, Expr):
        return x
    if isinstance(x, int):
        return IntLit(x)
    q = Fraction(x)
    return IntLit(q.numerator) if q.denominator == 1 else RatLit(q)


def lattice_angle(e: Expr) -> Fraction | None:
    """The exact angle (in units of pi) if ``e`` is a literal angle, else None."""
    if isinstance(e, PiMul):
        return Fraction(e.coef)
    if isinstance(e, Pi):
        return Fraction(1)
    if isinstance(e, IntLit) and e.value == 0:
        return Fraction(0)
    return None


# -- formatting --------------------------------------------------------------


def _fmt_rat(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def format_expr(e: Expr) -> str:
    if isinstance(e, IntLit):
        return str(e.value)
    if isinstance(e, RatLit):
        return _fmt_rat(e.value)
    if isinstance(e, Pi):
        return "pi"
    if isinstance(e, Catalan):
        return "catalan"
    if isinstance(e, PiMul):
        return f"{_fmt_rat(Fraction(e.coef))}*pi"
    if isinstance(e, Sqrt):
        return f"sqrt({e.n})"
    if isinstance(e, Pow2):
        return f"pow2({_fmt_rat(Fraction(e.e))})"
    if isinstance(e, (Add, Mul)):
        head = "add" if isinstance(e, Add) else "mul"
        return f"{head}({', '.join(format_expr(a) for a in e.args)})"
    if isinstance(e, Neg):
        return f"neg({format_expr(e.arg)})"
    if isinstance(e, Div):
        return f"div({format_expr(e.num)}, {format_expr(e.den)})"
    if isinstance(e, Log):
        return f"log({format_expr(e.arg)})"
    if isinstance(e, Atan):
        return f"atan({format_expr(e.arg)})"
    if isinstance(e, Cl2):
        return f"cl2({format_expr(e.arg)})"
    if isinstance(e, (ReLi, ImLi)):
        head = "reli" if isinstance(e, ReLi) else "imli"
        return f"{head}({e.s}, {e.p}, {_fmt_rat(Fraction(e.angle))}*pi)"
    raise TypeError(f"not an expression node: {e!r}")


# -- parsing -----------------------------------------------------------------


class ExprSyntaxError(ValueError):
    def __init__(self, msg: str, pos: int) -> None:
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


_TOKEN = re.compile(
    r"\s*(?:(?P<num>-?\d+(?:/\d+)?(?:\*pi)?)|(?P<name>[a-z][a-z0-9]*)|(?P<punct>[(),]))"
)

_UNARY = {"neg": Neg, "log": Log, "atan": Atan, "cl2": Cl2}


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m:
                raise ExprSyntaxError("unexpected character", pos + len(text[pos:]) - len(text[pos:].lstrip()))
            kind = m.lastgroup
            self.toks.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.i = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            raise ExprSyntaxError("unexpected end of input", len(self.text))
        self.i += 1
        return tok

    def expect(self, ch: str) -> None:
        kind, val, pos = self.take()
        if val != ch:
            raise ExprSyntaxError(f"expected {ch!r}, found {val!r}", pos)

    def args(self) -> list[tuple[Expr, int]]:
        self.expect("(")
        out = [self.expr_with_pos()]
        while True:
            kind, val, pos = self.take()
            if val == ")":
                return out
            if val != ",":
                raise ExprSyntaxError(f"expected ',' or ')', found {val!r}", pos)
            out.append(self.expr_with_pos())

    def expr_with_pos(self) -> tuple[Expr, int]:
        tok = self.peek()
        pos = tok[2] if tok else len(self.text)
        return self.expr(), pos

    def expr(self) -> Expr:
        kind, val, pos = self.take()
        if kind == "num":
            if val.endswith("*pi"):
                return PiMul(Fraction(val[:-3]))
            q = Fraction(val)
            return IntLit(int(q)) if "/" not in val else RatLit(q)
        if kind == "punct":
            raise ExprSyntaxError(f"unexpected {val!r}", pos)
        if val == "pi":
            return Pi()
        if val == "catalan":
            return Catalan()
        args = self.args()

        def arity(n: int) -> None:
            if len(args) != n:
                raise ExprSyntaxError(f"{val} takes {n} argument(s), got {len(args)}", pos)

        def int_arg(k: int) -> int:
            e, p = args[k]
            if not isinstance(e, IntLit):
                raise ExprSyntaxError(f"{val} needs an integer literal", p)
            return e.value

        try:
            if val in _UNARY:
                arity(1)
                return _UNARY[val](args[0][0])
            if val == "add":
                return Add(tuple(a for a, _ in args))
            if val == "mul":
                return Mul(tuple(a for a, _ in args))
            if val == "div":
                arity(2)
                return Div(args[0][0], args[1][0])
            if val == "sqrt":
                arity(1)
                return Sqrt(int_arg(0))
            if val == "pow2":
                arity(1)
                e, p = args[0]
                if isinstance(e, IntLit):
                    return Pow2(Fraction(e.value))
                if isinstance(e, RatLit):
                    return Pow2(e.value)
                raise ExprSyntaxError("pow2 needs a rational literal", p)
            if val in ("reli", "imli"):
                arity(3)
                ang, p = args[2]
                a = lattice_angle(ang)
                if a is None:
                    raise ExprSyntaxError("polylog angle must be a literal multiple of pi", p)
                cls = ReLi if val == "reli" else ImLi
                return cls(int_arg(0), int_arg(1), a)
        except ValueError as exc:
            if isinstance(exc, ExprSyntaxError):
                raise
            raise ExprSyntaxError(str(exc), pos) from None
        raise ExprSyntaxError(f"unknown head {val!r}", pos)


def parse_expr(text: str) -> Expr:
    p = _Parser(text)
    e = p.expr()
    extra = p.peek()
    if extra is not None:
        raise ExprSyntaxError(f"trailing input {extra[1]!r}", extra[2])
    return e
