"""The twelve acceptance criteria; one PASS/FAIL line per criterion.

Run directly (``python3 tests/test_acceptance.py``) or under pytest, where the
lines appear in the terminal summary.
"""
import pytest

from coxalt.acceptance import CRITERIA, run_criterion

try:
    from tests.support import ACCEPTANCE_LINES
except ImportError:  # executed as a script
    ACCEPTANCE_LINES = []


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"c{c[0]:02d}" for c in CRITERIA])
def test_criterion(number, acceptance_log):
    res = run_criterion(number)
    line = res.line()
    acceptance_log.append(line)
    print(line)
    assert res.passed, line


if __name__ == "__main__":
    for num, _, _ in CRITERIA:
        print(run_criterion(num).line())
