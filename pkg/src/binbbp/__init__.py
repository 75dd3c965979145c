"""Binary BBP-type formulas in bases 2^(12p): generation, rigorous evaluation,
verification and digit extraction."""

from __future__ import annotations

__version__ = "0.1.0"

from .digits import CarryAmbiguity, DigitRun, extract_bits, extract_constant, modpow2
from .exact import IndeterminateDivision, Real, pow2_scale, sqrt_nat
from .generators import (
    DomainError, FamilyId, NotBBPType, OmegaSpec, catalog, catalog_entry, gen_degree1,
    gen_degree2, gen_family,
)
from .pformula import (
    FormulaParseError, IncompatibleShapes, PFormula, ScaledFormula, ZeroRelation, combine,
    eval_p, eval_scaled, is_zero_relation, parse, serialize, verify,
)

__all__ = [
    "__version__",
    "CarryAmbiguity", "DigitRun", "extract_bits", "extract_constant", "modpow2",
    "IndeterminateDivision", "Real", "pow2_scale", "sqrt_nat",
    "DomainError", "FamilyId", "NotBBPType", "OmegaSpec", "catalog", "catalog_entry",
    "gen_degree1", "gen_degree2", "gen_family",
    "FormulaParseError", "IncompatibleShapes", "PFormula", "ScaledFormula", "ZeroRelation",
    "combine", "eval_p", "eval_scaled", "is_zero_relation", "parse", "serialize", "verify",
]
