import numpy as np
import pytest

from rkfield.experiments import ExperimentConfig, simulate
from rkfield.kernel import KernelSpec

ACCEPTANCE_LINES = []


@pytest.fixture
def table2():
    return ExperimentConfig()


@pytest.fixture
def table2_spec(table2):
    return KernelSpec.from_frequency(2, table2.frequency, table2.sound_speed)


@pytest.fixture
def table2_samples(table2):
    _, clean, noisy = simulate(table2, table2.seed)
    return clean, noisy


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
