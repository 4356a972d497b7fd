import random

import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def nprng():
    return np.random.default_rng(20240611)


CRITERIA = {
    1: "dimension fixtures",
    2: "matrix fixtures",
    3: "basis fixtures",
    4: "printed identities verify",
    5: "prime-field coefficients",
    6: "rank equals wm(q, n)",
    7: "relations vanish at every point",
    8: "interpolation round-trip",
    9: "Psi kernel equals vanishing polynomials",
    10: "determinism",
}

_outcomes: dict[int, list[str]] = {}


def _criterion(nodeid):
    name = nodeid.split("::")[-1]
    if "test_acceptance.py" not in nodeid or not name.startswith("test_criterion_"):
        return None
    return int(name.split("_")[2])


def pytest_runtest_logreport(report):
    c = _criterion(report.nodeid)
    if c is None:
        return
    if report.when == "call" or report.outcome != "passed":
        _outcomes.setdefault(c, []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for c, label in CRITERIA.items():
        results = _outcomes.get(c)
        if not results:
            status = "NOT RUN"
        elif all(r == "passed" for r in results):
            status = "PASS"
        else:
            status = "FAIL"
        terminalreporter.write_line(f"criterion {c:2d} {label}: {status} ({len(results or [])} checks)")
