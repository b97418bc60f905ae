import numpy as np
import pytest
from hypothesis import settings

from horokit import transforms as tr

settings.register_profile("horokit", deadline=None, max_examples=40)
settings.load_profile("horokit")

CRITERIA = {}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        terminalreporter.write_line(CRITERIA[n])


@pytest.fixture(scope="session")
def packets():
    return tr.packet_family()


@pytest.fixture(scope="session")
def packet(packets):
    return packets[0]


@pytest.fixture
def rng():
    return np.random.default_rng(7)
