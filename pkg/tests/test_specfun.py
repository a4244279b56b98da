import math

import numpy as np
import pytest
from mpmath import mp

from FracPolya.core.errors import DomainError
from FracPolya.core.specfun import (DomainKind, DomainSpec, gamma, log_gamma, polya_term,
                                    unit_ball_volume, weyl_constant)


def mp_log_gamma(x):
    with mp.workdps(40):
        return float(mp.loggamma(mp.mpf(x)))


@pytest.mark.parametrize("x", [0.05, 0.3, 0.5, 1.5, 2.5, 3.7, 10.0, 42.5, 170.0])
def test_log_gamma_matches_lgamma(x):
    assert log_gamma(x) == pytest.approx(math.lgamma(x), rel=1e-12)


@pytest.mark.parametrize("x", [1.0 - 1e-8, 1.0 + 1e-8, 2.0 - 1e-8, 2.0 + 1e-8,
                               1.0 - 1e-13, 1.0 + 1e-13, 2.0 - 1e-13, 2.0 + 1e-13])
def test_log_gamma_relative_error_near_its_zeros(x):
    assert log_gamma(x) == pytest.approx(mp_log_gamma(x), rel=1e-14)


@pytest.mark.parametrize("x", [0.49, 0.5, 0.51, 1.4616321449683623, 1.49, 1.5,
                               1.51, 2.49, 2.5, 2.51, 0.999, 2.001])
def test_log_gamma_relative_error_at_series_edges(x):
    assert log_gamma(x) == pytest.approx(mp_log_gamma(x), rel=1e-13)


def test_log_gamma_relative_error_on_grid():
    for x in np.linspace(0.005, 50.0, 2000):
        x = float(x)
        assert log_gamma(x) == pytest.approx(mp_log_gamma(x), rel=1e-13), x


def test_log_gamma_exact_zeros():
    assert log_gamma(1.0) == 0.0
    assert log_gamma(2.0) == 0.0


def test_gamma_recurrence():
    for x in np.linspace(0.1, 10.0, 100):
        x = float(x)
        assert gamma(x + 1.0) == pytest.approx(x * gamma(x), rel=1e-13), x


def stirling_log_gamma(x):
    """Shift to x >= 20, then the Stirling series."""
    shift = 0.0
    while x < 20.0:
        shift -= math.log(x)
        x += 1.0
    inv = 1.0 / x
    series = inv / 12.0 - inv ** 3 / 360.0 + inv ** 5 / 1260.0 - inv ** 7 / 1680.0
    return shift + (x - 0.5) * math.log(x) - x + 0.5 * math.log(2.0 * math.pi) + series


@pytest.mark.parametrize("x", [0.7, 1.25, 2.5, 3.3, 7.5])
def test_log_gamma_matches_stirling_oracle(x):
    assert log_gamma(x) == pytest.approx(stirling_log_gamma(x), rel=1e-12)


def test_gamma_known_values():
    assert gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-13)
    assert gamma(1.5) == pytest.approx(0.5 * math.sqrt(math.pi), rel=1e-13)
    assert gamma(5.0) == pytest.approx(24.0, rel=1e-13)
    assert gamma(1.0) == pytest.approx(1.0, rel=1e-14)


@pytest.mark.parametrize("x", [0.0, -1.0, -0.5, math.inf, math.nan])
def test_log_gamma_rejects_non_positive(x):
    with pytest.raises(DomainError):
        log_gamma(x)


def test_unit_ball_volume_and_weyl_constant():
    assert unit_ball_volume(1) == pytest.approx(2.0, rel=1e-14)
    assert unit_ball_volume(2) == pytest.approx(math.pi, rel=1e-14)
    assert unit_ball_volume(3) == pytest.approx(4.0 * math.pi / 3.0, rel=1e-14)
    assert weyl_constant(1) == pytest.approx(math.pi, rel=1e-14)
    assert weyl_constant(2) == pytest.approx(4.0 * math.pi, rel=1e-14)
    with pytest.raises(DomainError):
        unit_ball_volume(0)


def test_domain_spec_constructors():
    iv = DomainSpec.interval(2.0)
    assert iv.kind is DomainKind.INTERVAL
    assert (iv.d, iv.volume, iv.label) == (1, 2.0, "interval(L=2)")
    disk = DomainSpec.unit_disk()
    assert (disk.d, disk.volume, disk.label) == (2, math.pi, "unit_disk")
    assert DomainSpec.square().volume == 4.0
    with pytest.raises(DomainError):
        DomainSpec.interval(0.0)
    with pytest.raises(DomainError):
        DomainSpec(DomainKind.SQUARE, 3.0)


def test_polya_term_interval():
    assert polya_term(3, DomainSpec.interval(2.0), 1.0) == pytest.approx(1.5 * math.pi,
                                                                         rel=1e-14)
    assert polya_term(1, DomainSpec.interval(math.pi), 2.0) == pytest.approx(1.0, rel=1e-14)


@pytest.mark.parametrize("alpha", [0.1, 0.5, 1.0, 1.7, 2.0])
def test_polya_term_planar_domains(alpha):
    assert polya_term(1, DomainSpec.unit_disk(), alpha) == pytest.approx(2.0 ** alpha, rel=1e-13)
    assert polya_term(1, DomainSpec.square(), alpha) == pytest.approx(
        math.pi ** (alpha / 2.0), rel=1e-13)


def test_polya_term_rejects_bad_arguments():
    with pytest.raises(DomainError):
        polya_term(0, DomainSpec.unit_disk(), 1.0)
    with pytest.raises(DomainError):
        polya_term(1, DomainSpec.unit_disk(), 0.0)
