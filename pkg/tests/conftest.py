import numpy as np
import pytest

from radius_lab.generators import GeneratorSpec, generate
from radius_lab.rng import derive_seed

ACCEPTANCE_LINES: list[str] = []


def random_matrix(kind, dim, master, index):
    return generate(GeneratorSpec(kind, dim, derive_seed(master, index)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
