from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from binbbp._kernels import available_kernels, get_kernel, head_sum_python
from binbbp.digits import (
    CarryAmbiguity, DigitRun, _read, extract_bits, extract_constant, modpow2, window_of_real,
)
from binbbp.generators import catalog, catalog_entry
from binbbp.pformula import PFormula, ScaledFormula, eval_p, eval_scaled

# windows of the constants computed with an independent multiprecision library at 700 bits
FROZEN = {
    ("log2", 0, 16): "B17217F7D1CF79AB",
    ("log2", 400, 16): "AE35C13821442757",
    ("pi_sqrt3", 0, 16): "70FF7724ACB762F7",
    ("catalan_g", 100, 8): "D32D0C63",
    ("catalan_g", 400, 16): "F8DA12F16BFC58BB",
    ("arctan_1_6", 40, 16): "35BAD778D84CBA28",
    ("sqrt3_log_2_plus_sqrt3", 0, 16): "47F21B0B45743809",
    ("pi_sqrt3_log2", 400, 16): "0EEE6AEA9EB31F13",
}


@pytest.mark.parametrize("e,m,expected", [(0, 7, 1), (5, 1, 0), (10, 1000, 24)])
def test_modpow2_examples(e, m, expected):
    assert modpow2(e, m) == expected


def test_modpow2_random_pairs():
    rng = random.Random(1)
    for _ in range(10_000):
        e, m = rng.randrange(0, 2**20 + 1), rng.randrange(1, 2**64 + 1)
        assert modpow2(e, m) == pow(2, e, m)


def test_modpow2_rejects_bad_input():
    with pytest.raises(ValueError):
        modpow2(-1, 5)
    with pytest.raises(ValueError):
        modpow2(3, 0)


@pytest.mark.parametrize("key", list(FROZEN), ids=lambda k: f"{k[0]}@{k[1]}")
def test_frozen_windows(key):
    name, t, n = key
    assert extract_constant(catalog_entry(name), t, n).hex_digits == FROZEN[key]


def test_log2_twelve_digits():
    run = extract_constant(catalog_entry("log2"), 0, 12)
    assert run.hex_digits == "B17217F7D1CF"
    assert run.formatted() == "0x.B17217F7D1CF @ bit 0"
    assert run.guard_margin_bits >= 8


def test_log2_raw_extract_matches_eval():
    f = catalog_entry("log2").formula
    ref = eval_p(f, 256)
    assert extract_bits(f, 0, 16).hex_digits == window_of_real(ref, 0, 16)


@pytest.mark.parametrize("entry", catalog(), ids=lambda e: e.name)
def test_t0_matches_direct_evaluation(entry):
    ref = eval_scaled(entry, 400) if isinstance(entry, ScaledFormula) else eval_p(entry.formula, 400)
    got = extract_constant(entry, 0, 16) if isinstance(entry, ScaledFormula) else extract_bits(entry.formula, 0, 16)
    assert got.hex_digits == window_of_real(ref, 0, 16)


def test_zero_relation_gives_zeros():
    run = extract_bits(catalog_entry("Z1").formula, 1000, 8, name="Z1")
    assert run.hex_digits == "00000000"
    assert run.integer_snap


def test_argument_checks():
    f = catalog_entry("log2").formula
    for args in [(-1, 4), (0, 0), (0, 65)]:
        with pytest.raises(ValueError):
            extract_bits(f, *args)
    with pytest.raises(ValueError):
        extract_bits(f, 0, 4, guard_bits=4)


def test_carry_ambiguity_reading():
    w, n = 64, 4
    boundary = 1 << (w - 4 * n)
    assert _read(boundary, 3, w, n) is None
    assert _read(boundary * 5 + boundary // 2, 3, w, n).hex_digits == "0005"


def test_carry_ambiguity_raised_when_retries_exhausted(monkeypatch):
    import binbbp.digits as digits

    monkeypatch.setattr(digits, "_read", lambda *a: None)
    with pytest.raises(CarryAmbiguity) as info:
        extract_bits(catalog_entry("log2").formula, 0, 4)
    assert info.value.guard_bits == 96 * 2 ** digits.MAX_RETRIES


@settings(max_examples=30, deadline=None)
@given(t=st.integers(0, 4000), name=st.sampled_from(["log2", "catalan_g", "arctan_1_6", "Z2"]))
def test_offset_consistency(t, name):
    f = catalog_entry(name).formula
    a = extract_bits(f, t, 8).hex_digits
    b = extract_bits(f, t + 4, 8).hex_digits
    assert a[1:] == b[:-1]


@pytest.mark.parametrize("workers", [2, 8])
def test_worker_determinism(workers):
    f = catalog_entry("catalan_g").formula
    one = extract_bits(f, 3000, 16, workers=1)
    assert extract_bits(f, 3000, 16, workers=workers) == one


@pytest.mark.parametrize("kernel", available_kernels())
def test_kernels_agree(kernel):
    f = catalog_entry("pi_sqrt3_log2").formula
    assert extract_bits(f, 2500, 16, kernel=kernel) == extract_bits(f, 2500, 16, kernel="python")


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 2**31 - 2), st.integers(0, 5000), st.integers(2, 2**31 - 1)),
                min_size=1, max_size=20))
def test_array_kernels_exact(terms):
    a, e, d = zip(*[(x % m, k, m) for x, k, m in terms])
    expected = head_sum_python(a, e, d, 96)
    for name in available_kernels():
        _, kernel = get_kernel(name)
        assert kernel(a, e, d, 96) == expected


def test_kernel_env_selection(monkeypatch):
    monkeypatch.setenv("BINBBP_KERNEL", "python")
    assert get_kernel()[0] == "python"
    monkeypatch.setenv("BINBBP_KERNEL", "fortran")
    with pytest.raises(ValueError):
        get_kernel()


def test_large_moduli_fall_back_to_python():
    # degree 3 at k ~ 60 pushes (24k + j)^3 past 2^31
    f = PFormula(3, 12, 24, tuple(range(1, 25)))
    ref = eval_p(f, 1200)
    assert extract_bits(f, 720, 8).hex_digits == window_of_real(ref, 720, 8)


def test_digit_run_dict():
    run = DigitRun(8, "AB", 20, "x", 96)
    assert run.as_dict()["text"] == "0x.AB @ bit 8"
