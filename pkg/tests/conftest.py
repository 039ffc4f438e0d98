import sys
from pathlib import Path

import pytest

SRC = Path(__file__).resolve().parent.parent / "src"
try:
    import ulogview  # noqa: F401
except ImportError:
    sys.path.insert(0, str(SRC))

import sample_flights  # noqa: E402


@pytest.fixture(scope="session")
def mission():
    return sample_flights.mission_log()


@pytest.fixture(scope="session")
def rc_loss():
    return sample_flights.rc_loss_log()


@pytest.fixture(scope="session")
def dirty():
    return sample_flights.dirty_log()


@pytest.fixture(scope="session")
def mission_parsed(mission):
    from ulogview import parse_log

    return parse_log(mission[0])


@pytest.fixture(scope="session")
def rc_loss_parsed(rc_loss):
    from ulogview import parse_log

    return parse_log(rc_loss[0])
