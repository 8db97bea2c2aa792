"""Acceptance criteria 1 to 10, one test each.

Every test prints a single PASS/FAIL line; the lines are repeated in the
pytest terminal summary, and ``python tests/test_acceptance.py`` prints
them on its own.
"""

import sys

import pytest

from cuspcalc.reproduce import CRITERIA, run_criterion

BUDGET_SECONDS = 60
LINES: list[str] = []  # collected for the terminal summary in conftest


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    result = run_criterion(n)
    print(result.line())
    LINES.append(result.line())
    failing = [c.line() for c in result.checks if not c.passed]
    assert result.passed, "\n".join(failing)
    assert result.seconds < BUDGET_SECONDS


if __name__ == "__main__":
    results = [run_criterion(n) for n in sorted(CRITERIA)]
    for r in results:
        print(r.line())
    sys.exit(0 if all(r.passed for r in results) else 1)
