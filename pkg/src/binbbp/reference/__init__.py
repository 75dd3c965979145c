"""Independent high-precision oracles for left-hand-side constants."""

from .clausen import (
    bernoulli_number,
    bernoulli_poly,
    cl2,
    cl_duplication_check,
    clausen2,
    clausen3,
    clausen_lattice,
    gl_closed,
    gl_variant,
    gl_variant_report,
    periodic_series,
)
from .constants import atan, catalan, ln2, log, pi, sqrt2, sqrt3, zeta3
from .evaluate import eval_expr
from .expr import (
    Add, Atan, Catalan, Cl2, Div, Expr, ExprSyntaxError, ImLi, IntLit, Log, Mul,
    Neg, Pi, PiMul, Pow2, RatLit, ReLi, Sqrt, format_expr, lit, parse_expr,
)
from .polylog import im_li2_closed, li1_closed, omega, polylog_series, surd_expr
from .trig import Surd, cos_pi, sin_pi, trig_table

__all__ = [
    "bernoulli_number", "bernoulli_poly", "cl2", "cl_duplication_check", "clausen2", "clausen3",
    "clausen_lattice", "gl_closed", "gl_variant", "gl_variant_report", "periodic_series",
    "atan", "catalan", "ln2", "log", "pi", "sqrt2", "sqrt3", "zeta3",
    "eval_expr",
    "Add", "Atan", "Catalan", "Cl2", "Div", "Expr", "ExprSyntaxError", "ImLi", "IntLit", "Log", "Mul",
    "Neg", "Pi", "PiMul", "Pow2", "RatLit", "ReLi", "Sqrt", "format_expr", "lit", "parse_expr",
    "im_li2_closed", "li1_closed", "omega", "polylog_series", "surd_expr",
    "Surd", "cos_pi", "sin_pi", "trig_table",
]
