"""The eleven acceptance criteria, one test each; each prints a PASS/FAIL line."""
import pytest

from minorforge.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"c{c[0]:02d}-{c[1].replace(' ', '-')}" for c in CRITERIA])
def test_criterion(number, capsys):
    result = run_criterion(number, quick=False)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.detail
