"""Shared fixtures and the acceptance-criteria summary hook."""

import numpy as np
import pytest

from dwbc import ThetaContext
from helpers import ACCEPTANCE_RESULTS


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE_RESULTS):
        desc, passed, detail = ACCEPTANCE_RESULTS[num]
        status = "PASS" if passed else "FAIL"
        line = f"[{num:2d}] {status}  {desc}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def ctx():
    """Square-lattice theta context, tau = i."""
    return ThetaContext(1j)


@pytest.fixture(scope="session")
def ctx_generic():
    """A generic (non-rectangular) theta context."""
    return ThetaContext(0.3 + 0.8j)


@pytest.fixture
def rng():
    return np.random.default_rng(20257)
