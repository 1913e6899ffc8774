import pytest
from hypothesis import HealthCheck, settings

from tricover.builder import ChoiceConfig, construct_cover
from tricover.fixtures import fixture_matrix

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_COVERS: dict = {}


def cover_for(key: str, seed: int = 0):
    """Constructed covers are shared across test modules (building them is the slow part)."""
    if (key, seed) not in _COVERS:
        _COVERS[(key, seed)] = construct_cover(fixture_matrix()[key], ChoiceConfig(seed=seed))
    return _COVERS[(key, seed)]


@pytest.fixture(scope="session")
def covers():
    return cover_for


@pytest.fixture(scope="session")
def matrix():
    return fixture_matrix()


ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
