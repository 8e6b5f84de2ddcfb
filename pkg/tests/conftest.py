from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from protoalg.corpus import FIXTURES, load_fixture

settings.register_profile(
    "ci",
    derandomize=True,
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")

_CACHE = {}


def fixture(name: str):
    if name not in _CACHE:
        _CACHE[name] = load_fixture(name)
    return _CACHE[name]


@pytest.fixture(scope="session")
def cd():
    return fixture("cd")


@pytest.fixture(scope="session")
def cd_renamed():
    return fixture("cd_renamed")


@pytest.fixture(scope="session")
def diamond_pair():
    return fixture("diamond_a"), fixture("diamond_b")


@pytest.fixture(scope="session")
def cyc_pair():
    return fixture("cyc_a"), fixture("cyc_b")


@pytest.fixture(scope="session")
def swap_pair():
    return fixture("swap_a"), fixture("swap_b")


@pytest.fixture(scope="session")
def minimal():
    return fixture("minimal")


@pytest.fixture(scope="session")
def all_fixtures():
    return {name: fixture(name) for name in FIXTURES}
