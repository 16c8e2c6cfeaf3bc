"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import pytest

from spaceform_euler.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"criterion_{c[0]:02d}" for c in CRITERIA])
def test_criterion(number, capsys):
    result = run_criterion(number, seed=0)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.detail
