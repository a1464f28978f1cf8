"""The twelve end-to-end criteria, one test each.

Every criterion prints a single ``[PASS]``/``[FAIL]`` line; the lines are
also collected into a summary section at the end of the pytest run.
"""

import pytest

from conftest import ACCEPTANCE
from toposdesk.acceptance import CHECKS, run_checks


@pytest.mark.parametrize("ident", [str(i) for i in range(1, len(CHECKS) + 1)])
def test_criterion(ident, request):
    (r,) = run_checks({ident})
    line = f"[{'PASS' if r.passed else 'FAIL'}] item {r.ident}: {r.title} ({r.detail})"
    print(line)
    request.config.stash[ACCEPTANCE].append(line)
    assert r.passed, f"{r.detail}\n{r.witness}"


def test_all_criteria_are_present():
    assert len(CHECKS) == 12
