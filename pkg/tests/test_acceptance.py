"""Acceptance gate: every criterion from the registry, one line each.

All comparisons are bit-exact; the budgets are the stated wall-clock
targets.  Run with `pytest -s tests/test_acceptance.py` to see the
pass/fail line per criterion, or `twogroups selftest` for the same suite
without pytest.
"""

import pytest

from twogroups.acceptance import CRITERIA


@pytest.mark.parametrize("cid,title,fn", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(cid, title, fn):
    ok, detail = fn()
    line = f"{'PASS' if ok else 'FAIL'} [{cid}] {title}"
    print(line)
    assert ok, f"{line}: {detail}"
