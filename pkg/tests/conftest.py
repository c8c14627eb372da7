import sys

import pytest

from permtol.lattice import chain, from_covers
from permtol.tolerance import BinaryRelation

from helpers import catalog


@pytest.fixture(scope="session")
def catalog6():
    return catalog(6)


@pytest.fixture
def square():
    return from_covers(4, [(0, 1), (0, 2), (1, 3), (2, 3)])


@pytest.fixture
def c3():
    return chain(3)


@pytest.fixture
def c4():
    return chain(4)


@pytest.fixture
def alpha():
    return BinaryRelation.from_pairs(4, [(0, 1), (2, 3)])


@pytest.fixture
def beta():
    return BinaryRelation.from_pairs(4, [(0, 2), (1, 3)])


@pytest.fixture
def c4_pair():
    T = BinaryRelation.from_pairs(4, [(0, 1), (2, 3)])
    S = BinaryRelation.from_pairs(4, [(0, 1), (1, 2), (2, 3)])
    return T, S


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    results = getattr(acceptance, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for key in sorted(results):
            terminalreporter.write_line(results[key])
