import pytest

from sscurves import catalog as cat
from sscurves.autgrp import automorphism_group
from sscurves.grpid import identify

CRITERIA = {}


def record_criterion(number, ok, detail=""):
    CRITERIA[number] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        ok, detail = CRITERIA[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture(scope="session")
def records():
    return cat.load_catalog()


@pytest.fixture(scope="session")
def rational_results(records):
    """All 30 F_11 curves, both engines (disagreement raises)."""
    out = {}
    for rec in cat.rational_records(records):
        G = automorphism_group(rec.Q, rec.P, 11, 11, engine="both", curve_id=rec.id)
        identify(G)
        out[rec.id] = G
    return out


@pytest.fixture(scope="session")
def closure_results(records):
    out = {}
    for rec in cat.closure_records(records):
        G = automorphism_group(rec.Q, rec.P, 11, 0, engine="groebner", curve_id=rec.id)
        identify(G)
        out[rec.id] = G
    return out
