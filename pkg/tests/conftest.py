import numpy as np
import pytest

from heartsel._accel import HAS_NUMBA, use_backend
from heartsel.tabular import FeatureMatrix

BACKENDS = ["numpy"] + (["numba"] if HAS_NUMBA else [])


@pytest.fixture(params=BACKENDS)
def each_backend(request):
    with use_backend(request.param):
        yield request.param


def make_blobs(n, seed, sep=3.0, q=2):
    """Two balanced Gaussian blobs at -sep and +sep on every axis (sigma 1)."""
    rng = np.random.default_rng(seed)
    y = np.repeat([0, 1], n // 2)
    X = rng.normal(size=(n, q)) + np.where(y[:, None] == 1, sep, -sep)
    return FeatureMatrix(X, tuple(f"x{i}" for i in range(q)), y)


@pytest.fixture(scope="session")
def blobs():
    """200 train / 100 test, centre distance 6*sqrt(2) sigma."""
    return make_blobs(200, 11), make_blobs(100, 12)


# One line per acceptance criterion, filled in by test_acceptance.py.
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        status, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {status.upper():4s} {detail}")
