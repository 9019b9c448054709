import os

import pytest
from hypothesis import HealthCheck, settings

from cubictwist.lfunctions import LValueCache

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def lcache(tmp_path_factory):
    """One L-value cache shared by every test in the session."""
    return LValueCache(str(tmp_path_factory.mktemp("lvalues") / "cache.csv"))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
