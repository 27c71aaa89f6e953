import numpy as np
import pytest

from uavtilt.antenna import ArrayConfig
from uavtilt.radio import Scenario


def make_scenario(gbs, gue=(), orientations=(0.0, 120.0, 240.0), area=(2000.0, 2000.0), **kwargs):
    return Scenario(
        gbs_positions=np.asarray(gbs, dtype=float),
        gue_positions=np.asarray(gue, dtype=float).reshape(-1, 3),
        sector_orientations=np.asarray(orientations, dtype=float),
        area=area,
        **kwargs,
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20240501)


@pytest.fixture
def omni_like():
    """Single flat element: unit gain toward boresight at the horizon."""
    return ArrayConfig(n_elements=1, max_element_gain=0.0)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
