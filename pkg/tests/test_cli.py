from __future__ import annotations

import json
import subprocess
import sys

import pytest

from binbbp import __version__
from binbbp.cli import main
from binbbp.generators import catalog_entry
from binbbp.pformula import parse, serialize


def run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    assert code == 0
    assert out.count("\n") == 15 and "catalan_g" in out


def test_list_families_json(capsys):
    code, out, _ = run(capsys, "list", "--families", "--json")
    doc = json.loads(out)
    assert code == 0
    assert doc["binbbp"]["version"] == __version__
    assert [r["slug"] for r in doc["result"]["families"]][:2] == ["re-sum-a", "re-diff-a"]


def test_show_round_trips(capsys):
    code, out, _ = run(capsys, "show", "catalan_g")
    assert code == 0
    assert parse(out) == catalog_entry("catalan_g")
    assert out == serialize(catalog_entry("catalan_g"))


def test_show_json_result_round_trips(capsys):
    _, out, _ = run(capsys, "show", "Z4", "--json")
    assert parse(json.dumps(json.loads(out)["result"])) == catalog_entry("Z4")


def test_show_from_file(tmp_path, capsys):
    path = tmp_path / "f.json"
    path.write_text(serialize(catalog_entry("log2")))
    code, out, _ = run(capsys, "verify", str(path), "--bits", "128")
    assert code == 0 and out.rstrip().endswith("PASS")


def test_gen_document(capsys):
    code, out, _ = run(capsys, "gen", "--family", "im-sum-a", "--degree", "1", "--p", "1")
    assert code == 0
    assert parse(out).formula == catalog_entry("pi_sqrt3").formula


def test_gen_closed_degree2(capsys):
    code, out, _ = run(capsys, "gen", "--family", "im-diff-b", "--degree", "2", "--p", "3", "--closed")
    assert code == 0 and parse(out).name == "deg2-4-p3"


def test_gen_even_p(capsys):
    code, _, err = run(capsys, "gen", "--family", "im-sum-a", "--degree", "1", "--p", "2")
    assert code == 2
    assert "not BBP-type for even p" in err


def test_gen_p_cap(capsys):
    code, _, err = run(capsys, "gen", "--family", "im-sum-a", "--degree", "1", "--p", "101")
    assert code == 2 and "capped" in err


def test_verify_pass(capsys):
    code, out, _ = run(capsys, "verify", "pi_sqrt3", "--bits", "256", "--json")
    result = json.loads(out)["result"]
    assert code == 0
    assert result["status"] == "PASS" and result["agreement_bits"] >= 248


def test_verify_fail_exit_code(tmp_path, capsys):
    doc = json.loads(serialize(catalog_entry("log2")))
    doc["lhs"] = "log(3)"
    path = tmp_path / "wrong.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "verify", str(path), "--bits", "64")
    assert code == 1 and out.rstrip().endswith("FAIL")


def test_zero_check(capsys):
    code, out, _ = run(capsys, "zero-check", "Z1", "--bits", "128", "--json")
    result = json.loads(out)["result"]
    assert code == 0 and result["status"] == "PASS"
    assert result["value_log2"] == "-inf" or result["value_log2"] < -112


def test_zero_check_nonzero(capsys):
    code, _, _ = run(capsys, "zero-check", "log2", "--bits", "64")
    assert code == 1


def test_eval(capsys):
    code, out, _ = run(capsys, "eval", "log2", "--bits", "64")
    assert code == 0 and out.startswith("0.693147180559945309")


def test_bits_env_default(monkeypatch, capsys):
    monkeypatch.setenv("BINBBP_BITS", "80")
    _, out, _ = run(capsys, "eval", "log2", "--json")
    assert json.loads(out)["result"]["bits"] == 80
    monkeypatch.setenv("BINBBP_BITS", "lots")
    code, _, _ = run(capsys, "eval", "log2")
    assert code == 2


def test_digits(capsys):
    code, out, _ = run(capsys, "digits", "log2", "--pos", "0", "--count", "12")
    assert code == 0 and out == "0x.B17217F7D1CF @ bit 0\n"


def test_digits_raw_and_kernel(capsys):
    code, out, _ = run(capsys, "digits", "Z1", "--pos", "1000", "--count", "8", "--kernel", "numpy", "--json")
    assert code == 0
    assert json.loads(out)["result"]["hex"] == "00000000"


def test_carry_ambiguity_exit_code(monkeypatch, capsys):
    import binbbp.digits as digits

    monkeypatch.setattr(digits, "_read", lambda *a: None)
    code, _, err = run(capsys, "digits", "log2", "--pos", "0", "--count", "4")
    assert code == 3 and "carry ambiguity" in err


@pytest.mark.parametrize("argv", [["show", "nope"], ["frobnicate"], ["digits", "log2"],
                                  ["verify", "Z1"], ["eval", "log2", "--bits", "4"]])
def test_usage_errors(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 2


def test_byte_identical_output():
    cmd = [sys.executable, "-m", "binbbp.cli", "verify", "catalan_g", "--bits", "128", "--json"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second
    assert json.loads(first)["result"]["status"] == "PASS"


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0
    assert out.count("[PASS]") == 9
