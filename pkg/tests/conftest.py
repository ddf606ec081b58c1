import warnings

import pytest


@pytest.fixture(autouse=True)
def _quiet_solver_warnings():
    with warnings.catch_warnings():
        warnings.filterwarnings("ignore", message="Solution may be inaccurate")
        yield
