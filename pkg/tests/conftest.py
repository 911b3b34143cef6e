import pytest

from nreq_torque.oscillator import OscillatorParams
from nreq_torque.torque import ThermalState


@pytest.fixture
def gold():
    return OscillatorParams.gold()


@pytest.fixture
def room():
    return ThermalState.from_kelvin(300.0, 600.0)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
