import functools

import pytest
from hypothesis import HealthCheck, settings

from symdias import pipeline

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@functools.lru_cache(maxsize=None)
def degree6_identities():
    return pipeline.degree6_integer_identities()


@functools.lru_cache(maxsize=None)
def degree6_module():
    _, rows = degree6_identities()
    return pipeline.degree6_module(rows=rows)


@functools.lru_cache(maxsize=None)
def degree7_table(prime):
    return pipeline.degree7_table(prime)


@pytest.fixture(scope="session")
def deg6():
    return degree6_identities()


@pytest.fixture(scope="session")
def deg6_module():
    return degree6_module()


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion")[1].split()[0])):
            terminalreporter.write_line(line)
