"""The acceptance suite: nine end-to-end checks, each returning a pass/fail record.

``run_all(quick=True)`` is the reduced-precision variant used by ``binbbp selftest``.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .digits import extract_bits, extract_constant, window_of_real
from .exact import Real, sqrt_nat
from .generators import (
    FamilyId, NotBBPType, catalog, catalog_entry, gen_degree1, gen_degree2, gen_family,
)
from .pformula import (
    ScaledFormula, ZeroRelation, agreement_bits, combine, eval_p, eval_scaled,
    is_zero_relation, verify,
)
from .reference import (
    bernoulli_poly, cl_duplication_check, eval_expr, gl_closed, periodic_series, pi,
)

__all__ = ["CriterionResult", "CRITERIA", "run_one", "run_all"]


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number}: {self.title} ({self.detail}; {self.seconds:.2f}s)"


def _families(quick: bool) -> tuple[tuple[int, ...], tuple[int, ...]]:
    return ((1, 3), (1, 2)) if quick else ((1, 3, 5), (1, 2, 3))


def family_identities(quick: bool = False) -> tuple[bool, str]:
    ps, ss = _families(quick)
    prec, need = (128, 96) if quick else (256, 192)
    worst, n = prec, 0
    for fid in FamilyId:
        for s in ss:
            for p in ps:
                worst = min(worst, verify(gen_family(fid, s, p), prec).agreement_bits)
                n += 1
    return worst >= need, f"{n} checks, worst agreement {worst} bits (need {need})"


def degree1_closed_forms(quick: bool = False) -> tuple[bool, str]:
    ps, _ = _families(quick)
    prec, need = (128, 96) if quick else (256, 192)
    worst_rhs = worst_series = prec
    for fid in FamilyId:
        for p in ps:
            closed = gen_degree1(fid, p)
            worst_rhs = min(worst_rhs, verify(closed, prec).agreement_bits)
            series = eval_expr(gen_family(fid, 1, p).lhs, prec + 8)
            if fid.sqrt3_power:
                series = series * sqrt_nat(3, series.prec)
            lhs = eval_expr(closed.lhs, prec + 8)
            worst_series = min(worst_series, agreement_bits(lhs, series))
    ok = worst_rhs >= need and worst_series >= need
    return ok, f"closed vs P worst {worst_rhs} bits, closed vs series worst {worst_series} bits (need {need})"


def degree2_identities(quick: bool = False) -> tuple[bool, str]:
    prec, need = (96, 80) if quick else (160, 128)
    ps = (1,) if quick else (1, 3)
    worst = prec
    for ident in (1, 2, 3, 4):
        for p in ps:
            worst = min(worst, verify(gen_degree2(ident, p), prec).agreement_bits)
    return worst >= need, f"{4 * len(ps)} identities, worst agreement {worst} bits (need {need})"


def catalog_formulas(quick: bool = False) -> tuple[bool, str]:
    prec, need = (128, 120) if quick else (256, 240)
    scaled = [e for e in catalog() if isinstance(e, ScaledFormula)]
    results = {e.name: verify(e, prec).agreement_bits for e in scaled}
    worst = min(results, key=results.get)
    ok = len(scaled) == 10 and all(v >= need for v in results.values())
    return ok, f"{len(scaled)} formulas, worst {worst} at {results[worst]} bits (need {need})"


def _rational_multiple(a: tuple[int, ...], b: tuple[int, ...]) -> Fraction | None:
    ratio = None
    for x, y in zip(a, b):
        if (x == 0) != (y == 0):
            return None
        if x:
            r = Fraction(x, y)
            if ratio is None:
                ratio = r
            elif r != ratio:
                return None
    return ratio


def zero_relations(quick: bool = False) -> tuple[bool, str]:
    prec, need = (128, 112) if quick else (256, 240)
    zeros = [e for e in catalog() if isinstance(e, ZeroRelation)]
    reports = [is_zero_relation(z, prec) for z in zeros]
    worst = max(r.value_log2 for r in reports)
    small = all(r.is_zero and r.value_log2 < -need for r in reports)
    a = catalog_entry("pi_sqrt3")
    b = catalog_entry("pi_sqrt3_alt")
    diff = combine([(a.scale, a.formula), (-b.scale, b.formula)])
    ratio = _rational_multiple(diff.coeffs, catalog_entry("Z1").formula.coeffs)
    ok = len(zeros) == 5 and small and ratio is not None
    return ok, f"5 relations, largest |value| 2^{worst:.1f}; pi*sqrt3 difference = {ratio} * Z1"


def parity_gate(quick: bool = False) -> tuple[bool, str]:
    failures = 0
    for fid in FamilyId:
        for p in (2, 4, 6):
            try:
                gen_family(fid, 1, p)
                failures += 1
            except NotBBPType:
                pass
        for p in range(1, 10, 2):
            for s in range(1, 5):
                coeffs = gen_family(fid, s, p).formula.coeffs
                failures += not all(isinstance(a, int) for a in coeffs)
    return failures == 0, f"{failures} violations over 8 families"


def digit_extraction(quick: bool = False) -> tuple[bool, str]:
    n_hex = 16
    offsets = (0, 40, 400) if quick else (0, 40, 400, 4000)
    n_random = 10 if quick else 100
    ref_bits = 4600 if quick else 6000
    rng = random.Random(20240611)
    entries = catalog()
    extract_bits(entries[0].formula, 64, 4)  # compile kernels before timing
    mismatches, slowest, overlap_bad = 0, 0.0, 0
    for e in entries:
        scaled = isinstance(e, ScaledFormula)
        ref = eval_scaled(e, ref_bits) if scaled else eval_p(e.formula, ref_bits)
        raw = eval_p(e.formula, ref_bits)
        for t in offsets:
            start = time.perf_counter()
            run = extract_constant(e, t, n_hex) if scaled else extract_bits(e.formula, t, n_hex, name=e.name)
            slowest = max(slowest, time.perf_counter() - start) if t == offsets[-1] else slowest
            mismatches += run.hex_digits != window_of_real(ref, t, n_hex)
            mismatches += extract_bits(e.formula, t, n_hex).hex_digits != window_of_real(raw, t, n_hex)
        for _ in range(n_random):
            t = rng.randrange(0, 4001)
            first = extract_bits(e.formula, t, 8).hex_digits
            second = extract_bits(e.formula, t + 4, 8).hex_digits
            overlap_bad += first[1:] != second[:-1]
    ok = mismatches == 0 and overlap_bad == 0 and slowest < 1.0
    return ok, (f"{len(entries)} entries, {mismatches} window mismatches, {overlap_bad} overlap failures, "
                f"slowest t={offsets[-1]} run {slowest:.3f}s")


_BERNOULLI_0 = [Fraction(1), Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30), 0, Fraction(1, 42), 0,
                Fraction(-1, 30), 0, Fraction(5, 66), 0, Fraction(-691, 2730)]


def clausen_bernoulli(quick: bool = False) -> tuple[bool, str]:
    prec = 96
    grid = range(0, 24, 3) if quick else range(24)
    failed = 0
    for n in (2, 3):
        for m in (1, 2, 3):
            for k in grid:
                failed += not cl_duplication_check(n, m, Fraction(k, 12), prec)
    zeta2 = pi(prec + 32) ** 2 / 6
    gl2 = gl_closed(1, 0, prec)
    series = periodic_series(2, "cos", 0, prec)
    gl_ok = agreement_bits(gl2, zeta2) >= prec and agreement_bits(series, zeta2) >= prec
    bern_ok = all(bernoulli_poly(n, 0) == b for n, b in enumerate(_BERNOULLI_0))
    ok = failed == 0 and gl_ok and bern_ok
    return ok, f"{failed} duplication failures, Gl_2(0) ok={gl_ok}, Bernoulli table ok={bern_ok}"


def _random_dag(rng: random.Random, prec: int, size: int) -> tuple[Real, Fraction]:
    leaves = []
    for _ in range(4):
        q = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**4))
        leaves.append((Real.from_fraction(q, prec), q))
    nodes = list(leaves)
    for _ in range(size):
        (x, qx), (y, qy) = rng.choice(nodes), rng.choice(nodes)
        op = rng.choice("+-*/n")
        if op == "+":
            nodes.append((x + y, qx + qy))
        elif op == "-":
            nodes.append((x - y, qx - qy))
        elif op == "*":
            nodes.append((x * y, qx * qy))
        elif op == "n":
            nodes.append((-x, -qx))
        elif qy != 0 and abs(y.man) > y.rad:
            nodes.append((x / y, qx / qy))
    return nodes[-1]


def error_tracking(quick: bool = False) -> tuple[bool, str]:
    rng = random.Random(7)
    trials = 200 if quick else 1000
    inside = 0
    for _ in range(trials):
        value, exact = _random_dag(rng, rng.choice((32, 64, 128)), rng.randint(3, 12))
        inside += value.contains(exact)
    return inside == trials, f"{inside}/{trials} shadow values inside their intervals"


CRITERIA: list[tuple[int, str, Callable[[bool], tuple[bool, str]]]] = [
    (1, "family identities", family_identities),
    (2, "degree-1 closed forms", degree1_closed_forms),
    (3, "degree-2 identities", degree2_identities),
    (4, "catalog formulas", catalog_formulas),
    (5, "zero relations", zero_relations),
    (6, "parity gate", parity_gate),
    (7, "digit extraction", digit_extraction),
    (8, "Clausen and Bernoulli machinery", clausen_bernoulli),
    (9, "error-tracking soundness", error_tracking),
]


def run_one(number: int, quick: bool = False) -> CriterionResult:
    _, title, fn = CRITERIA[number - 1]
    start = time.perf_counter()
    ok, detail = fn(quick)
    return CriterionResult(number, title, ok, detail, time.perf_counter() - start)


def run_all(quick: bool = False) -> list[CriterionResult]:
    return [run_one(n, quick) for n, _, _ in CRITERIA]
