import os

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def pytest_terminal_summary(terminalreporter):
    from tests import acceptance_log

    if acceptance_log.RESULTS:
        terminalreporter.write_sep("=", "acceptance criteria")
        for n in sorted(acceptance_log.RESULTS):
            terminalreporter.write_line(acceptance_log.RESULTS[n])


def pytest_configure(config):
    os.environ.pop("SPHC_CONFIG", None)
