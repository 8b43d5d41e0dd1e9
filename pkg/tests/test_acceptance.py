"""Runs every acceptance criterion and prints one PASS/FAIL line for each."""

import pytest

from ampletwist.acceptance import CRITERIA


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"c{c.number:02d}" for c in CRITERIA])
def test_criterion(criterion):
    result = criterion()
    print(result.line())
    assert result.passed, result.detail


def test_summary(capsys):
    results = [c() for c in CRITERIA]
    with capsys.disabled():
        print()
        for r in results:
            print(r.line())
    assert all(r.passed for r in results)
