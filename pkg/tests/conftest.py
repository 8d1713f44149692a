import sys

import numpy as np
import pytest

from chaingroup import groups


@pytest.fixture(scope="session")
def small_groups():
    return {
        "S3": groups.symmetric(3),
        "S4": groups.symmetric(4),
        "A4": groups.alternating(4),
        "D8": groups.dihedral(4),
        "D10": groups.dihedral(5),
        "D12": groups.dihedral(6),
        "Q8": groups.quaternion(2),
        "Q12": groups.quaternion(3),
        "Z6": groups.cyclic(6),
    }


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
