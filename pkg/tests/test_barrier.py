"""Odd-window obstruction at omega = 0 and the closed-form dilation scan."""

import math

import mpmath
import pytest

from gaborcert import (
    Parity,
    PreconditionError,
    delta_at_zero,
    gaussian,
    h1_barrier_scan,
    odd_barrier_suite,
    termwise_gap,
)


def mp_delta0(b):
    """delta at omega = 0 for the b-dilate of the first Hermite window."""
    with mpmath.workdps(60):
        c = 2 * mpmath.pi * mpmath.mpf(b) ** 2
        s2 = mpmath.nsum(lambda k: k**2 * mpmath.exp(-c * k**2), [1, mpmath.inf])
        s4 = mpmath.nsum(lambda k: k**4 * mpmath.exp(-c * k**2), [1, mpmath.inf])
        return mpmath.mpf("0.5") * mpmath.sqrt(s2 / s4)


def test_delta_at_zero_h1_matches_oracle(h1):
    report = delta_at_zero(h1)
    truth = float(mp_delta0(1))
    assert report.parity is Parity.ODD
    assert report.ghat0_sq <= 1e-20
    assert report.strict
    assert abs(report.delta0 - truth) <= 1e-12 * truth
    assert report.delta0_high < 0.5
    assert report.num0 < report.den0


def test_delta_at_zero_gaussian_not_strict(gauss):
    report = delta_at_zero(gauss)
    assert report.parity is Parity.EVEN
    assert not report.strict
    assert report.delta0 > 0.5
    # at omega = 0 the Gaussian numerator is dominated by |ghat(0)|^2 = 1
    assert report.num0 > report.den0


def test_scan_endpoint_matches_oracle():
    row = h1_barrier_scan(1.0, 2.0, 2).rows[0]
    assert row.b == 1.0
    truth = float(mp_delta0(1))
    assert abs(row.delta0 - truth) <= 1e-10 * truth
    assert row.delta0_low <= truth <= row.delta0_high


def test_scan_saturates_at_large_dilation():
    row = h1_barrier_scan(3.0, 4.0, 2).rows[0]
    assert row.strict
    assert abs(row.delta0 - 0.5) <= 1e-10
    assert row.delta0_high <= 0.5


@pytest.mark.parametrize("b", [1.0, 1.2, 10.0])
def test_log_gap_certifies_true_gap(b):
    row = h1_barrier_scan(b, 2.0 * b, 2).rows[0]
    # cancellation-free gap: 1/2 - delta = x / (2*(1 + sqrt(1 - x)))
    # with x = E/S4 and E = S4 - S2 summed termwise (all terms >= 0)
    with mpmath.workdps(60):
        c = 2 * mpmath.pi * mpmath.mpf(b) ** 2
        s4 = mpmath.nsum(lambda k: k**4 * mpmath.exp(-c * k**2), [1, mpmath.inf])
        e = mpmath.nsum(
            lambda k: k**2 * (k**2 - 1) * mpmath.exp(-c * k**2), [2, mpmath.inf]
        )
        x = e / s4
        log_true_gap = float(mpmath.log(x / (2 * (1 + mpmath.sqrt(1 - x)))))
    assert row.log_gap_lb <= log_true_gap
    # the bound is a genuine gap estimate, not vacuous
    assert row.log_gap_lb > log_true_gap - 5.0


def test_scan_rows_are_ordered_and_strict():
    scan = h1_barrier_scan(0.1, 10.0, 25)
    assert len(scan.rows) == 25
    assert scan.all_strict
    assert scan.max_delta0_high <= 0.5
    for row in scan.rows:
        assert row.delta0_low <= row.delta0 <= row.delta0_high
        assert math.isfinite(row.log_gap_lb)
        assert row.log_gap_lb < 0.0


def test_scan_csv_round_trip(tmp_path):
    scan = h1_barrier_scan(0.5, 2.0, 5)
    path = tmp_path / "scan.csv"
    scan.write_csv(path)
    assert path.read_bytes().decode() == scan.csv_text()
    lines = scan.csv_text().strip().splitlines()
    assert lines[0] == "b,delta0_low,delta0,delta0_high"
    assert len(lines) == 6
    first = [float(x) for x in lines[1].split(",")]
    assert first[0] == scan.rows[0].b
    assert first[2] == scan.rows[0].delta0


def test_scan_validates_input():
    with pytest.raises(PreconditionError):
        h1_barrier_scan(2.0, 1.0, 5)
    with pytest.raises(PreconditionError):
        h1_barrier_scan(0.0, 1.0, 5)
    with pytest.raises(PreconditionError):
        h1_barrier_scan(1.0, 2.0, 1)
    with pytest.raises(PreconditionError):
        h1_barrier_scan(1.0, 2.0, 5, tail_tol=0.0)


def test_odd_suite_reports_all_strict(odd_corpus):
    reports = odd_barrier_suite(odd_corpus)
    assert len(reports) == len(odd_corpus)
    for report in reports:
        assert report.parity is Parity.ODD
        assert report.strict
        assert report.delta0 < 0.5
        assert report.ghat0_sq < 1e-20


def test_odd_suite_rejects_even_window(odd_corpus, gauss):
    with pytest.raises(PreconditionError, match="gaussian"):
        odd_barrier_suite(list(odd_corpus) + [gauss])


def test_termwise_gap_h1_closed_form(h1):
    # the k = 2 pair dominates: (2^2 - 1) * |ghat(2)|^2 = 12 * exp(-8*pi)
    gap = termwise_gap(h1)
    truth = 12.0 * math.exp(-8.0 * math.pi)
    assert abs(gap - truth) <= 1e-12 * truth
    assert gap > 0.0


def test_termwise_gap_validates(h1):
    with pytest.raises(PreconditionError):
        termwise_gap(h1, k_max=1)
