"""Acceptance criteria 1-10: one PASS/FAIL line each, at the stated tolerances.

Criteria 1-9 group the verification cases by criterion; criterion 10 times
the whole ``verify all`` run.  The lines are printed in the terminal summary
(see conftest.py) and inside each test's captured output.
"""
import time

import pytest

from fusionforge import verify

TITLES = {
    1: "quantum dimensions",
    2: "induction multiplicities",
    3: "fusion expansions",
    4: "decomposition outputs",
    5: "mu identities",
    6: "principal graph",
    7: "normality and Out bound",
    8: "locality prechecks and central charges",
    9: "property suites",
    10: "runtime of verify all",
}
RUNTIME_LIMIT = 600.0

LINES: dict[int, str] = {}


@pytest.fixture(scope="module")
def results():
    t0 = time.perf_counter()
    res = verify.run("all")
    return res, time.perf_counter() - t0


def _report(criterion: int, passed: bool, body: str) -> str:
    line = f"{'PASS' if passed else 'FAIL'} criterion {criterion} ({TITLES[criterion]}): {body}"
    LINES[criterion] = line
    print(line)
    return line


@pytest.mark.parametrize("criterion", range(1, 10))
def test_criterion(results, criterion):
    res, _ = results
    mine = [r for r in res if r.case.criterion == criterion]
    assert mine, f"no cases registered for criterion {criterion}"
    failed = [r for r in mine if not r.passed]
    body = f"{len(mine) - len(failed)}/{len(mine)} cases pass"
    if failed:
        body += "; " + "; ".join(f"{r.case.suite}/{r.case.name} measured {r.measured} vs {r.case.expected}"
                                 for r in failed)
    _report(criterion, not failed, body)
    for r in mine:
        print("   ", r.line())
    assert not failed, "\n".join(r.line() for r in failed)


def test_criterion_10_runtime(results):
    _, seconds = results
    ok = seconds < RUNTIME_LIMIT
    _report(10, ok, f"verify all took {seconds:.1f} s (limit {RUNTIME_LIMIT:.0f} s)")
    assert ok
