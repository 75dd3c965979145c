"""Digit extraction: hex digits of a P-formula at a bit offset, without earlier digits.

For ``2^t P = sum_k sum_j a_j 2^(t - m k) / (k l + j)^s`` the terms with
``m k <= t`` only matter mod 1, so each reduces to ``(a_j 2^(t-mk) mod d) / d``.
The rest form a rapidly shrinking tail summed directly.  Everything is
accumulated as an exact signed integer in ``W`` fractional bits, so every
term contributes at most one ulp of error and the sum is independent of how
terms are split across workers.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ._kernels import KERNEL_LIMIT, get_kernel, head_sum_python, modpow2
from .exact import Real
from .pformula import PFormula, ScaledFormula, eval_scaled

__all__ = [
    "DigitRun",
    "CarryAmbiguity",
    "MIN_MARGIN",
    "modpow2",
    "extract_bits",
    "extract_constant",
    "window_of_real",
]

MIN_MARGIN = 8
MAX_RETRIES = 3


class CarryAmbiguity(ArithmeticError):
    def __init__(self, t: int, guard: int) -> None:
        super().__init__(f"carry ambiguity at bit offset {t} (guard {guard} bits)")
        self.bit_offset = t
        self.guard_bits = guard


@dataclass(frozen=True)
class DigitRun:
    bit_offset: int
    hex_digits: str
    guard_margin_bits: int
    formula_name: str
    guard_bits: int = 0
    integer_snap: bool = False

    def formatted(self) -> str:
        return f"0x.{self.hex_digits} @ bit {self.bit_offset}"

    def as_dict(self) -> dict:
        return {
            "formula": self.formula_name,
            "bit_offset": self.bit_offset,
            "hex": self.hex_digits,
            "text": self.formatted(),
            "guard_bits": self.guard_bits,
            "guard_margin_bits": self.guard_margin_bits,
            "integer_snap": self.integer_snap,
        }


# -- the fractional window ----------------------------------------------------------------


def _round_up32(n: int) -> int:
    return -(-n // 32) * 32


def _head_terms(f: PFormula, t: int, divisor: int) -> list[tuple[int, int, int]]:
    """(a mod d, exponent, d) for every term with m k <= t."""
    m, l, s = f.base_log2, f.length, f.degree
    out = []
    k = 0
    while m * k <= t:
        e = t - m * k
        for j, a in enumerate(f.coeffs, start=1):
            if a:
                d = (k * l + j) ** s * divisor
                out.append((a % d, e, d))
        k += 1
    return out


def _head_chunk(args: tuple[list[tuple[int, int, int]], int, str]) -> int:
    terms, w, kernel_name = args
    _, kernel = get_kernel(kernel_name)
    small = [x for x in terms if x[2] < KERNEL_LIMIT]
    big = [x for x in terms if x[2] >= KERNEL_LIMIT]
    total = 0
    if small:
        a, e, d = zip(*small)
        total += kernel(a, e, d, w)
    if big:
        a, e, d = zip(*big)
        total += head_sum_python(a, e, d, w)
    return total


def _split(seq: Sequence, parts: int) -> list[Sequence]:
    size = -(-len(seq) // parts)
    return [seq[i:i + size] for i in range(0, len(seq), size)] or [seq]


def _tail(f: PFormula, t: int, w: int, divisor: int) -> tuple[int, int, int]:
    """(sum, number of terms, bound in ulps on what is left) for terms with m k > t."""
    m, l, s = f.base_log2, f.length, f.degree
    k0 = max(0, t // m + 1)
    # everything past k_end is below 2 sum|a| 2^(w + t - m(k_end+1)) ulps; make that <= 1
    bound_bits = (2 * sum(abs(a) for a in f.coeffs)).bit_length()
    k_end = max(k0, -(-t // m) + -(-w // m) + 2)
    while bound_bits > m * (k_end + 1) - w - t:
        k_end += 1
    total = 0
    count = 0
    for k in range(k0, k_end + 1):
        shift = w + t - m * k
        for j, a in enumerate(f.coeffs, start=1):
            if not a:
                continue
            d = (k * l + j) ** s * divisor
            total += (a << shift) // d if shift >= 0 else a // (d << -shift)
            count += 1
    return total, count, 1


def _window(f: PFormula, t: int, w: int, divisor: int = 1, *, kernel: str | None = None,
            workers: int = 1) -> tuple[int, int]:
    """``(v, rad)`` with ``frac(2^t P / divisor)`` within ``rad`` of ``v * 2^-w`` (mod 1)."""
    kernel_name, _ = get_kernel(kernel)
    terms = _head_terms(f, t, divisor)
    if workers > 1 and len(terms) > 1:
        jobs = [(list(chunk), w, kernel_name) for chunk in _split(terms, workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            head = sum(pool.map(_head_chunk, jobs))
    else:
        head = _head_chunk((terms, w, kernel_name))
    tail, n_tail, rest = _tail(f, t, w, divisor)
    return (head + tail) % (1 << w), len(terms) + n_tail + rest


@dataclass(frozen=True)
class _Reading:
    hex_digits: str
    margin: int
    snapped: bool


def _read(v: int, rad: int, w: int, n_hex: int) -> _Reading | None:
    """Digits of ``v * 2^-w`` if the interval cannot straddle a digit boundary.

    ``None`` means ambiguous at this precision.  An interval that contains an
    integer is reported as all zeros with ``snapped`` set.
    """
    g = w - 4 * n_hex
    one = 1 << w
    if v <= rad or v >= one - rad:
        margin = g - max(rad, 1).bit_length()
        return _Reading("0" * n_hex, margin, True)
    lo, hi = v - rad, v + rad
    if lo >> g != hi >> g:
        return None
    low = v & ((1 << g) - 1)
    dist = min(low, (1 << g) - low)
    margin = dist.bit_length() - 1 - max(rad, 1).bit_length()
    return _Reading(f"{v >> g:0{n_hex}X}", margin, False)


def _check_args(t: int, n_hex: int, guard_bits: int) -> None:
    if t < 0:
        raise ValueError("bit offset must be >= 0")
    if not 1 <= n_hex <= 64:
        raise ValueError("n_hex must be in 1..64")
    if guard_bits < 16:
        raise ValueError("guard_bits must be >= 16")


def _run(produce, t: int, n_hex: int, guard_bits: int, name: str) -> DigitRun:
    """Retry ``produce(w) -> (v, rad)`` with doubled guard until the reading is safe."""
    guard = guard_bits
    last: _Reading | None = None
    for attempt in range(MAX_RETRIES + 1):
        w = _round_up32(4 * n_hex + guard)
        v, rad = produce(w)
        reading = _read(v, rad, w, n_hex)
        if reading is not None and not reading.snapped and reading.margin >= MIN_MARGIN:
            return DigitRun(t, reading.hex_digits, reading.margin, name, guard)
        last = reading
        if attempt < MAX_RETRIES:
            guard *= 2
    if last is not None and last.snapped:
        return DigitRun(t, last.hex_digits, last.margin, name, guard, integer_snap=True)
    raise CarryAmbiguity(t, guard)


def extract_bits(f: PFormula, t: int, n_hex: int, guard_bits: int = 96, *, name: str = "",
                 kernel: str | None = None, workers: int = 1) -> DigitRun:
    """Hex digits of ``frac(2^t P(f))``."""
    _check_args(t, n_hex, guard_bits)
    return _run(lambda w: _window(f, t, w, kernel=kernel, workers=workers), t, n_hex, guard_bits, name)


def _split_scale(q: Fraction) -> tuple[int, int, int]:
    """``q = n / (odd * 2^e)``."""
    den = q.denominator
    e = (den & -den).bit_length() - 1
    return q.numerator, den >> e, e


def extract_constant(sf: ScaledFormula, t: int, n_hex: int, guard_bits: int = 96, *,
                     kernel: str | None = None, workers: int = 1) -> DigitRun:
    """Hex digits of the named constant ``scale * sqrt3^tau * P`` at bit offset t.

    A dyadic scale shifts the offset, an odd denominator is folded into each
    modulus, and the numerator multiplies the fractional window.  A sqrt(3)
    factor has no such shortcut, so those constants are evaluated in full.
    """
    _check_args(t, n_hex, guard_bits)
    num, odd, e = _split_scale(sf.scale)

    if sf.sqrt3_power:
        def produce(w: int) -> tuple[int, int]:
            x = eval_scaled(sf, t + w + 16, workers=workers)
            return _shift_window(x, t, w)
    else:
        def produce(w: int) -> tuple[int, int]:
            wide = _round_up32(w + abs(num).bit_length() + 1)
            v, rad = _window(sf.formula, t - e, wide, odd, kernel=kernel, workers=workers)
            v = v * num % (1 << wide)
            return v >> (wide - w), (rad * abs(num) >> (wide - w)) + 1

    return _run(produce, t, n_hex, guard_bits, sf.name)


def _shift_window(x: Real, t: int, w: int) -> tuple[int, int]:
    """``frac(2^t x)`` as ``(v, rad)`` in ``w`` fractional bits."""
    shift = x.prec - t - w
    if shift >= 0:
        return (x.man >> shift) % (1 << w), (x.rad >> shift) + 1
    return (x.man << -shift) % (1 << w), x.rad << -shift


def window_of_real(x: Real, t: int, n_hex: int) -> str | None:
    """Digits of ``frac(2^t x)`` read off a directly evaluated value, or None if ambiguous."""
    w = x.prec - t
    if w < 4 * n_hex + 2:
        return None
    reading = _read(*_shift_window(x, t, w), w, n_hex)
    return None if reading is None else reading.hex_digits
