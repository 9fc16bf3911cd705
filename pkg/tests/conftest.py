import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from gaborcert.window import combine, dilate, gaussian, hermite

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def gauss():
    return gaussian()


@pytest.fixture(scope="session")
def h1():
    return hermite(1)


@pytest.fixture(scope="session")
def h3():
    return hermite(3)


@pytest.fixture(scope="session")
def odd_corpus(h1, h3):
    return (
        h1,
        h3,
        hermite(5),
        dilate(h1, 0.7),
        combine([(1.0, h1), (0.2, h3)], label="h1+0.2*h3"),
    )


@pytest.fixture
def probe_grid():
    return np.linspace(-4.0, 4.0, 41)
