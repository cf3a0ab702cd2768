import sys

import pytest
from hypothesis import settings

from petripoly.algebra import Multiset
from petripoly.comm import phi
from petripoly.petri import PetriNet, Transition

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture(scope="session")
def E():
    return PetriNet(
        ("x", "y", "z"),
        {
            "alpha": Transition(Multiset.of(x=1), Multiset.of(y=1, z=1)),
            "beta": Transition(Multiset.of(y=2), Multiset.of(z=1)),
        },
    )


@pytest.fixture(scope="session")
def init():
    return Multiset.of(x=2, y=2)


@pytest.fixture(scope="session")
def rws(E):
    return phi(E)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
