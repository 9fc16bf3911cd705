"""Closed-form Gaussian certificate checked against direct summation."""

import math

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gaborcert import (
    DivergentSeriesError,
    PreconditionError,
    gaussian_certificate,
    geometric_tail,
)
from gaborcert.certify_gaussian import TWO_PI


def mp_tail(c, m, weight):
    with mpmath.workdps(40):
        if weight == "1":
            return mpmath.nsum(lambda k: mpmath.exp(-c * (k + mpmath.mpf("0.5"))), [m, mpmath.inf])
        return mpmath.nsum(
            lambda k: k * mpmath.exp(-c * (k + mpmath.mpf("0.5"))), [m, mpmath.inf]
        )


@pytest.mark.parametrize("weight", ["1", "k"])
@pytest.mark.parametrize("c", [0.5, 1.0, TWO_PI])
@pytest.mark.parametrize("m", [0, 1, 3])
def test_geometric_tail_matches_mpmath(c, m, weight):
    value = geometric_tail(c, m, weight)
    truth = float(mp_tail(c, m, weight))
    if truth == 0.0:
        assert value == 0.0
    else:
        assert abs(value - truth) <= 1e-13 * abs(truth)


def test_geometric_tail_rejects_bad_input():
    with pytest.raises(DivergentSeriesError):
        geometric_tail(0.0, 1)
    with pytest.raises(DivergentSeriesError):
        geometric_tail(-1.0, 1)
    with pytest.raises(PreconditionError):
        geometric_tail(1.0, -1)
    with pytest.raises(PreconditionError):
        geometric_tail(1.0, 1, "x")


def test_certificate_tails_are_small_and_exact():
    cert = gaussian_certificate()
    assert abs(cert.tail0 - float(mp_tail(TWO_PI, 1, "1"))) <= 1e-14 * cert.tail0
    assert abs(cert.tail1 - float(mp_tail(TWO_PI, 1, "k"))) <= 1e-14 * cert.tail1
    assert cert.tail0 < 1e-4
    assert cert.tail1 < 1e-4
    # closed forms: e^-pi / (e^(2 pi) - 1) and e^pi / (e^(2 pi) - 1)^2
    e2pi = math.exp(TWO_PI)
    assert abs(cert.tail0 - math.exp(-math.pi) / (e2pi - 1.0)) <= 1e-14 * cert.tail0
    assert abs(cert.tail1 - math.exp(math.pi) / (e2pi - 1.0) ** 2) <= 1e-14 * cert.tail1


def test_certificate_bounds_bracket_true_sums():
    cert = gaussian_certificate()
    with mpmath.workdps(50):
        s0 = mpmath.nsum(
            lambda k: mpmath.exp(-2 * mpmath.pi * (k + mpmath.mpf("0.5")) ** 2),
            [-mpmath.inf, mpmath.inf],
        )
        s1 = mpmath.nsum(
            lambda k: (k + mpmath.mpf("0.5")) ** 2
            * mpmath.exp(-2 * mpmath.pi * (k + mpmath.mpf("0.5")) ** 2),
            [-mpmath.inf, mpmath.inf],
        )
        truth = float(mpmath.mpf("0.5") * mpmath.sqrt(s0 / s1))
    assert cert.numerator_lb <= float(s0)
    assert cert.denominator_ub >= float(s1)
    assert cert.certified_delta < truth
    assert cert.certified_delta >= 0.9985
    assert cert.certified_delta < 0.5 * math.sqrt(cert.ratio_lb)


def test_certificate_dict_round_trip():
    cert = gaussian_certificate()
    d = cert.as_dict()
    assert set(d) == {
        "tail0",
        "tail1",
        "numerator_lb",
        "denominator_ub",
        "ratio_lb",
        "certified_delta",
    }
    assert d["certified_delta"] == cert.certified_delta


@given(x=st.floats(min_value=1.5, max_value=20.0))
def test_quadratic_decay_dominated_by_linear(x):
    # the certificate's termwise domination: x*exp(-2*pi*x^2) <= exp(-2*pi*x)
    assert x * math.exp(-TWO_PI * x * x) <= math.exp(-TWO_PI * x)
