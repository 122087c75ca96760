import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

from otlck import NumberField  # noqa: E402

settings.register_profile("otlck", max_examples=40, deadline=None)
settings.load_profile("otlck")

CUBIC = [-1, -1, 0, 1]  # x^3 - x - 1, signature (1, 1)
QUINTIC = [-1, -1, 0, 0, 0, 1]  # x^5 - x - 1, signature (1, 2)
OCTIC = [1, 0, -1, 0, 4, 0, -4, 0, 1]  # g(x^2), g = y^4 - 4y^3 + 4y^2 - y + 1, signature (4, 2)
SQRT2 = [-2, 0, 1]


@pytest.fixture(scope="session")
def cubic():
    return NumberField(CUBIC)


@pytest.fixture(scope="session")
def quintic():
    return NumberField(QUINTIC)


@pytest.fixture(scope="session")
def octic():
    return NumberField(OCTIC)


@pytest.fixture(scope="session")
def sqrt2():
    return NumberField(SQRT2)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for key in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[key])
