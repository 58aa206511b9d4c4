"""Acceptance battery: one test per criterion, each prints a PASS/FAIL line."""

import pytest

from singideal.acceptance import CRITERIA


@pytest.fixture
def report(capsys):
    def emit(result):
        with capsys.disabled():
            print(f"\n{result.line()}  ({result.seconds:.1f}s)")
            if not result.passed:
                print(f"     details: {result.details}")
        return result
    return emit


def test_battery_is_complete():
    assert sorted(CRITERIA) == list(range(1, 14))


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, report):
    result = report(CRITERIA[number]())
    assert result.number == number
    assert result.passed, result.details
