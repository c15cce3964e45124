"""Top-level acceptance gate: every criterion in cvclone.acceptance must
hold.  Each test delegates to the same check that `cvclone selftest` runs,
so a red test here and a nonzero selftest exit always agree."""

import pytest

from cvclone.acceptance import CRITERIA


@pytest.mark.parametrize("cid,name,check", CRITERIA,
                         ids=[f"{cid}-{name.replace(' ', '-')}"
                              for cid, name, _ in CRITERIA])
def test_acceptance_criterion(cid, name, check):
    ok, detail = check()
    assert ok, f"criterion {cid} ({name}): {detail}"
