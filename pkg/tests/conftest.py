import numpy as np
import pytest

from mimoee.hardware import REFERENCE_PROFILE, coefficients_from_hardware
from mimoee.propagation import REFERENCE_MODEL, a_lambda


@pytest.fixture(scope="session")
def coeffs():
    return coefficients_from_hardware(REFERENCE_PROFILE)


@pytest.fixture(scope="session")
def model():
    return REFERENCE_MODEL


@pytest.fixture(scope="session")
def a_lam(model):
    return a_lambda(model)


@pytest.fixture()
def rng():
    return np.random.default_rng(1234)


def golden_section(f, lo, hi, tol=1e-10, iters=200):
    """Independent scalar maximizer used as an oracle against closed forms."""
    phi = (np.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - phi * (b - a)
    d = a + phi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if (b - a) < tol * max(1.0, abs(a) + abs(b)):
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + phi * (b - a)
            fd = f(d)
    return 0.5 * (a + b)
