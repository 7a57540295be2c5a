import numpy as np
import pytest

from kpclust.measures import uniform
from kpclust.metric import EuclideanSpace, FiniteSpace

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def line():
    return EuclideanSpace(1)


@pytest.fixture
def plane():
    return EuclideanSpace(2)


@pytest.fixture
def four(line):
    """Uniform measure on {0, 1, 10, 11}."""
    return uniform(line, [0, 1, 10, 11])


@pytest.fixture
def three():
    """The points -1, 0, 1 with distances from the real line."""
    return FiniteSpace.from_coordinates([-1.0, 0.0, 1.0], ["-1", "0", "1"])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
