import numpy as np
import pytest

from tsgauss.series import TimeSeries


@pytest.fixture
def alternating():
    return TimeSeries.from_values([1.0, -1.0, 1.0, -1.0])


@pytest.fixture
def rng():
    return np.random.default_rng(20210624)


_ACCEPTANCE = []


@pytest.fixture(scope="session")
def acceptance_log():
    """Collects one line per acceptance criterion; echoed in the terminal summary."""
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(_ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
        terminalreporter.write_line(line)
