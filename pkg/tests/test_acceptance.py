"""The acceptance suite; each test prints one PASS/FAIL line."""

import pytest

from cgc import acceptance


@pytest.mark.slow
@pytest.mark.parametrize("k", range(1, 12))
def test_criterion(k, capsys):
    res = acceptance.CRITERIA[k - 1]()
    with capsys.disabled():
        print("\n" + res.line())
    assert res.ok, res.detail
