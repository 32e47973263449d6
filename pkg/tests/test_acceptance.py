"""Runs the full acceptance suite, one test per criterion.

Each criterion is a self-contained check with its own seed and, where
stated, a wall-clock budget that is part of the pass condition.  The
test id carries the criterion number; the printed line carries the
verdict, timing, and a one-line summary, so ``pytest -v`` doubles as
the acceptance report.
"""

import pytest

from gridmass.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number", CRITERIA)
def test_criterion(number):
    result = run_criterion(number)
    print(result.line())
    assert result.passed, result.line()
