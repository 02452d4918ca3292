import numpy as np
import pytest

from scarf2.model import states
from scarf2.verification import standard_grid

ACCEPTANCE_LINES = []


def grid_states(kind=None):
    """(label, params, StateIndex) for every bound state of the standard grid."""
    out = []
    for pt in standard_grid():
        if kind and not pt.label.startswith(kind):
            continue
        for s in states(pt.params):
            out.append((pt.label, pt.params, s))
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
