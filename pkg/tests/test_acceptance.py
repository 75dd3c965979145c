"""End-to-end acceptance criteria at full tolerance.

Each test prints one ``[PASS]``/``[FAIL]`` line; run with ``pytest -s`` to see them.
"""

from __future__ import annotations

import pytest

from binbbp.acceptance import CRITERIA, run_one


@pytest.mark.parametrize("number", [n for n, _, _ in CRITERIA],
                         ids=[title.replace(" ", "-") for _, title, _ in CRITERIA])
def test_criterion(number, capsys):
    result = run_one(number)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.line()
