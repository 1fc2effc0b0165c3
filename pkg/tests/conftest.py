import pytest

from origamis.action import build_action
from origamis.classify import census
from origamis.curves import components


@pytest.fixture(scope="session")
def censuses():
    """Censuses for degrees 1..5, computed once per test session."""
    return {d: census(d) for d in range(1, 6)}


@pytest.fixture(scope="session")
def census6():
    return census(6)


@pytest.fixture(scope="session")
def actions(censuses):
    return {d: build_action(censuses[d]) for d in censuses}


@pytest.fixture(scope="session")
def action6(census6):
    return build_action(census6)


@pytest.fixture(scope="session")
def all_components(actions):
    return {d: components(actions[d]) for d in actions}
