import math

import pytest
from hypothesis import given, strategies as st
from scipy.special import spence

from bosetrap.special import dilog, hyp4f3_series, log_gamma

# independently computed reference points (mpmath, 50 digits, rounded)
DILOG_TABLE2_ARG = 0.5 - math.sqrt(3.0) / 4.0
DILOG_TABLE2_VAL = 0.068143836827366424178
HYP4F3_QUARTER = 1.0902026271145431224


def test_log_gamma_matches_stdlib():
    for x in (0.25, 0.5, 1.0, 1.5, 7.0, 120.5):
        assert log_gamma(x) == math.lgamma(x)


def test_log_gamma_rejects_nonpositive():
    for x in (0.0, -1.0, -0.5):
        with pytest.raises(ValueError):
            log_gamma(x)


def test_dilog_special_values():
    assert dilog(0.0) == 0.0
    assert dilog(1.0) == pytest.approx(math.pi**2 / 6.0, rel=1e-15)
    assert dilog(-1.0) == pytest.approx(-math.pi**2 / 12.0, rel=1e-15)
    assert dilog(0.5) == pytest.approx(
        math.pi**2 / 12.0 - 0.5 * math.log(2.0) ** 2, rel=1e-15
    )


def test_dilog_matches_scipy_spence():
    # Li2(z) = spence(1 - z) in scipy's convention
    for z in (-3.0, -1.2, -0.7, -0.4, -0.05, 0.05, 0.3, 0.6, 0.9, 0.99):
        assert dilog(z) == pytest.approx(float(spence(1.0 - z)), rel=1e-13, abs=1e-15)


def test_dilog_value_used_by_alpha5():
    assert dilog(DILOG_TABLE2_ARG) == pytest.approx(DILOG_TABLE2_VAL, abs=1e-16)


def test_dilog_domain():
    with pytest.raises(ValueError):
        dilog(1.0 + 1e-9)


@given(st.floats(min_value=-0.95, max_value=0.95))
def test_dilog_square_identity(z):
    # Li2(z) + Li2(-z) = Li2(z^2)/2
    assert dilog(z) + dilog(-z) == pytest.approx(0.5 * dilog(z * z), abs=5e-15)


def test_hyp4f3_at_quarter():
    assert hyp4f3_series(0.25) == pytest.approx(HYP4F3_QUARTER, rel=2e-15)


def test_hyp4f3_at_zero_and_domain():
    assert hyp4f3_series(0.0) == 1.0
    for z in (-0.1, 1.0, 1.5):
        with pytest.raises(ValueError):
            hyp4f3_series(z)


def test_hyp4f3_first_terms():
    # hand-expanded series: 1 + (5/16) z + (35/216) z^2 + ...
    z = 1e-6
    assert hyp4f3_series(z) == pytest.approx(
        1.0 + 5.0 / 16.0 * z + 35.0 / 216.0 * z * z, rel=1e-15
    )
