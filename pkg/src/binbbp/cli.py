"""``binbbp`` command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
3 numeric failure (carry ambiguity after retries, indeterminate division).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .digits import CarryAmbiguity, extract_bits, extract_constant
from .exact import IndeterminateDivision, Real
from .generators import (
    DomainError, FamilyId, catalog, gen_degree1, gen_degree2, gen_family,
)
from .pformula import (
    FormulaParseError, PFormula, ScaledFormula, ZeroRelation, eval_p, eval_scaled,
    _decimal, is_zero_relation, parse, to_document, verify,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3
MAX_P = 99


class UsageError(Exception):
    pass


def _default_bits() -> int:
    raw = os.environ.get("BINBBP_BITS", "256")
    try:
        bits = int(raw)
    except ValueError:
        raise UsageError(f"BINBBP_BITS must be an integer, got {raw!r}") from None
    return bits


def _emit(args: argparse.Namespace, command: str, result: dict, text: str) -> None:
    if args.json:
        doc = {"binbbp": {"version": __version__}, "command": command, "result": result}
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _lookup(name: str) -> ScaledFormula | ZeroRelation | PFormula:
    """A catalog name, or a path to a formula document."""
    for e in catalog():
        if e.name == name:
            return e
    path = Path(name)
    if path.is_file():
        try:
            return parse(path.read_text())
        except FormulaParseError as exc:
            raise UsageError(f"{name}: {exc}") from None
    raise UsageError(f"unknown formula {name!r}; see 'binbbp list'")


def _real_dict(x: Real) -> dict:
    return {
        "mantissa": str(x.man),
        "prec": x.prec,
        "radius_ulps": str(x.rad),
    }


# -- commands ---------------------------------------------------------------------------


def cmd_list(args: argparse.Namespace) -> int:
    if args.families:
        rows = [{"slug": f.value, "sqrt3_power": f.sqrt3_power, "identity": f.describe()} for f in FamilyId]
        text = "\n".join(f"{r['slug']:10s}  {r['identity']}" for r in rows)
        _emit(args, "list", {"families": rows}, text)
        return EXIT_OK
    rows = []
    for e in catalog():
        f = e.formula
        row = {
            "name": e.name,
            "kind": "scaled" if isinstance(e, ScaledFormula) else "zero",
            "degree": f.degree,
            "base_log2": f.base_log2,
            "length": f.length,
        }
        if isinstance(e, ScaledFormula):
            row["scale"] = f"{e.scale.numerator}/{e.scale.denominator}"
            row["sqrt3_power"] = e.sqrt3_power
            row["lhs"] = str(e.lhs)
        rows.append(row)
    text = "\n".join(
        f"{r['name']:24s} {r['kind']:6s} s={r['degree']} b=2^{r['base_log2']:<3d} {r.get('lhs', '0')}"
        for r in rows
    )
    _emit(args, "list", {"entries": rows}, text)
    return EXIT_OK


def cmd_show(args: argparse.Namespace) -> int:
    e = _lookup(args.name)
    doc = to_document(e)
    if args.json:
        _emit(args, "show", doc, "")
    else:
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    if args.p > MAX_P:
        raise UsageError(f"p is capped at {MAX_P}")
    fid = FamilyId.from_slug(args.family)
    if args.closed:
        if args.degree == 1:
            sf = gen_degree1(fid, args.p)
        elif args.degree == 2:
            ident = {FamilyId.IM_SUM_A: 1, FamilyId.IM_DIFF_A: 2, FamilyId.IM_SUM_B: 3, FamilyId.IM_DIFF_B: 4}
            if fid not in ident:
                raise UsageError("degree-2 closed forms exist for the im-* families only")
            sf = gen_degree2(ident[fid], args.p)
        else:
            raise UsageError("closed forms exist for degree 1 and 2 only")
    else:
        sf = gen_family(fid, args.degree, args.p)
    doc = to_document(sf)
    if args.json:
        _emit(args, "gen", doc, "")
    else:
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    return EXIT_OK


def cmd_eval(args: argparse.Namespace) -> int:
    e = _lookup(args.name)
    if isinstance(e, ScaledFormula):
        x = eval_scaled(e, args.bits, workers=args.workers)
        what = "scale * sqrt3^t * P"
    else:
        x = eval_p(e if isinstance(e, PFormula) else e.formula, args.bits, workers=args.workers)
        what = "P"
    value = _decimal(x, args.bits)
    radius = f"2^{x.rad.bit_length() - x.prec}"
    result = {"name": getattr(e, "name", ""), "quantity": what, "bits": args.bits,
              "value": value, "radius": radius, "interval": _real_dict(x)}
    _emit(args, "eval", result, f"{value}\n+/- {radius}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    e = _lookup(args.name)
    if not isinstance(e, ScaledFormula):
        raise UsageError(f"{args.name} has no left-hand side; use zero-check")
    report = verify(e, args.bits, workers=args.workers)
    d = report.as_dict()
    text = (f"lhs = {d['lhs']}\nrhs = {d['rhs']}\n"
            f"agreement: {report.agreement_bits} bits\n{d['status']}")
    _emit(args, "verify", d, text)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_digits(args: argparse.Namespace) -> int:
    e = _lookup(args.name)
    if args.pos < 0:
        raise UsageError("--pos must be >= 0")
    if not 1 <= args.count <= 64:
        raise UsageError("--count must be in 1..64")
    kw = {"kernel": args.kernel, "workers": args.workers}
    if isinstance(e, ScaledFormula) and not args.raw:
        run = extract_constant(e, args.pos, args.count, args.guard, **kw)
    else:
        f = e if isinstance(e, PFormula) else e.formula
        run = extract_bits(f, args.pos, args.count, args.guard, name=getattr(e, "name", ""), **kw)
    _emit(args, "digits", run.as_dict(), run.formatted())
    return EXIT_OK


def cmd_zero_check(args: argparse.Namespace) -> int:
    e = _lookup(args.name)
    if args.bits < 64:
        raise UsageError("--bits must be >= 64")
    report = is_zero_relation(e if not isinstance(e, ScaledFormula) else e.formula, args.bits,
                              workers=args.workers)
    d = report.as_dict()
    d["name"] = getattr(e, "name", "")
    d["status"] = "PASS" if report.is_zero else "FAIL"
    text = f"|value| = 2^{d['value_log2']}  radius = 2^{d['radius_log2']}\n{d['status']}"
    _emit(args, "zero-check", d, text)
    return EXIT_OK if report.is_zero else EXIT_FAIL


def cmd_selftest(args: argparse.Namespace) -> int:
    from .acceptance import run_all

    results = run_all(quick=not args.full)
    rows = [{"criterion": r.number, "title": r.title, "passed": r.passed, "detail": r.detail} for r in results]
    text = "\n".join(r.line() for r in results)
    _emit(args, "selftest", {"full": args.full, "criteria": rows}, text)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


# -- parser --------------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse exits 2; keep that, just no traceback
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON document on stdout")
    bits = argparse.ArgumentParser(add_help=False)
    bits.add_argument("--bits", type=int, default=None, help="precision in bits (default $BINBBP_BITS or 256)")
    workers = argparse.ArgumentParser(add_help=False)
    workers.add_argument("--workers", type=int, default=1, help="worker processes")

    parser = _Parser(prog="binbbp", description="Binary BBP-type formulas: generate, verify, extract digits.")
    parser.add_argument("--version", action="version", version=f"binbbp {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("list", parents=[common], help="catalog entries or family slugs")
    p.add_argument("--families", action="store_true")
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("show", parents=[common], help="print a formula document")
    p.add_argument("name")
    p.set_defaults(func=cmd_show)

    p = sub.add_parser("gen", parents=[common], help="generate a family member")
    p.add_argument("--family", required=True, choices=[f.value for f in FamilyId])
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--closed", action="store_true", help="closed-form left-hand side (degree 1 or 2)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("eval", parents=[common, bits, workers], help="evaluate the right-hand side")
    p.add_argument("name")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify", parents=[common, bits, workers], help="compare both sides")
    p.add_argument("name")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("digits", parents=[common, workers], help="hex digits at a bit offset")
    p.add_argument("name")
    p.add_argument("--pos", type=int, required=True, help="bit offset")
    p.add_argument("--count", type=int, default=16, help="hex digits (1..64)")
    p.add_argument("--guard", type=int, default=96, help="initial guard bits")
    p.add_argument("--raw", action="store_true", help="digits of P itself, ignoring the scale")
    p.add_argument("--kernel", choices=["numba", "numpy", "python"], default=None)
    p.set_defaults(func=cmd_digits)

    p = sub.add_parser("zero-check", parents=[common, bits, workers], help="check that P vanishes")
    p.add_argument("name")
    p.set_defaults(func=cmd_zero_check)

    p = sub.add_parser("selftest", parents=[common], help="run the acceptance suite")
    p.add_argument("--full", action="store_true", help="full precision instead of the reduced run")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if hasattr(args, "bits") and args.bits is None:
            args.bits = _default_bits()
        if getattr(args, "bits", None) is not None and args.bits < 16:
            raise UsageError("--bits must be >= 16")
        return args.func(args)
    except (UsageError, DomainError) as exc:
        sys.stderr.write(f"binbbp: error: {exc}\n")
        return EXIT_USAGE
    except (CarryAmbiguity, IndeterminateDivision, ArithmeticError) as exc:
        sys.stderr.write(f"binbbp: numeric error: {exc}\n")
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
