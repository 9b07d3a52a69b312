"""One line per acceptance criterion; every check is exact (zero residual)."""
import pytest

from cherednik.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    result = run_criterion(number)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.checked > 0
    assert result.passed, result.failures[:5]
