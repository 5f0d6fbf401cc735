import os

import pytest
from hypothesis import HealthCheck, settings

from bpi.corpus import builtin_corpus, builtin_group
from bpi.groups import group_from_generators
from bpi.perm import parse_cycles

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

SMALL = [e.name for e in builtin_corpus() if e.expected_order <= 24]
ALL = [e.name for e in builtin_corpus()]


def perm(text, degree):
    return parse_cycles(text, degree)


@pytest.fixture(scope="session")
def S3():
    return builtin_group("S3")


@pytest.fixture(scope="session")
def S4():
    return builtin_group("S4")


@pytest.fixture(scope="session")
def A4():
    return builtin_group("A4")


@pytest.fixture(scope="session")
def Q8():
    return builtin_group("Q8")


@pytest.fixture(scope="session")
def A5():
    return group_from_generators(5, [perm("(1 2 3 4 5)", 5), perm("(1 2 3)", 5)])


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import VERDICTS
    except ImportError:
        return
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(VERDICTS):
            terminalreporter.write_line(VERDICTS[n])
