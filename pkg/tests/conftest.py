import os

import pytest
from hypothesis import HealthCheck, settings

from balance_lab import core
from balance_lab.enumeration import iter_labelled

settings.register_profile(
    "default", deadline=None, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def small_antimatroids():
    """Every labelled antimatroid on 1..4 elements."""
    return [a for n in range(1, 5) for a in iter_labelled(n)]


@pytest.fixture(scope="session")
def five_element_antimatroids():
    return list(iter_labelled(5))


@pytest.fixture
def poset_abc():
    """Lower sets of a < b with c incomparable."""
    return core.from_sets("abc", ["", "a", "c", "ac", "ab", "abc"])


_ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line per acceptance criterion."""
    def record(criterion: int, ok: bool, detail: str) -> None:
        line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'} - {detail}"
        _ACCEPTANCE[criterion] = line
        print(line)
    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(_ACCEPTANCE):
            terminalreporter.write_line(_ACCEPTANCE[k])
