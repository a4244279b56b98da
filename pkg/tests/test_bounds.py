import math

import numpy as np
import pytest
from mpmath import mp

from FracPolya.core.bounds import (EigenEstimate, EstimateKind, FractionalOrder, FIRST_BOUNDS,
                                   bk_upper, bk_upper_2d, check_alpha, disk_first_upper,
                                   dkk_upper_2d, dyda_pqr, dyda_upper_2d, first_bound,
                                   kkms_estimate, kkms_linear_upper, kkms_table_bracket,
                                   kkms_table_upper, kwasnicki_asymptotic, kwasnicki_estimate,
                                   kwasnicki_relative_correction, liyau_lower_sum,
                                   partii_logform, polya_estimate, scale_interval_estimate,
                                   square_first_upper)
from FracPolya.core.defaultsConfig import PUBLISHED_THRESHOLDS
from FracPolya.core.errors import ConsistencyError, DomainError
from FracPolya.core.specfun import DomainSpec

# first zero of J_0, squared: lambda_1 of the classical Dirichlet Laplacian on the disk
J01_SQUARED = 2.404825557695773 ** 2


def test_fractional_order_validates():
    assert FractionalOrder(1.5) == 1.5
    for bad in (0.0, -0.1, 2.0001, math.nan):
        with pytest.raises(DomainError):
            FractionalOrder(bad)
    assert type(check_alpha(1.5)) is float
    with pytest.raises(DomainError, match=r"\(0, 2\]"):
        check_alpha(2.5)
    assert check_alpha(0.0, allow_zero=True) == 0.0
    with pytest.raises(DomainError):
        check_alpha(0.0)


@pytest.mark.parametrize("alpha", [0.1, 0.699, 1.0, 1.5, 2.0])
def test_bk_2d_agrees_with_general_dimension(alpha):
    assert bk_upper_2d(alpha) == pytest.approx(bk_upper(alpha, 2), rel=1e-12)


def test_bounds_at_alpha_two():
    assert bk_upper_2d(2.0) == pytest.approx(6.0, rel=1e-13)
    assert dkk_upper_2d(2.0) == pytest.approx(304.0 / 48.0, rel=1e-13)
    pqr = dyda_pqr(2.0)
    pi2 = math.pi ** 2
    assert (pqr.P, pqr.Q, pqr.R) == (pytest.approx(1.6 * pi2, rel=1e-13),
                                     pytest.approx(32.0 * pi2, rel=1e-13),
                                     pytest.approx(0.0375 * pi2, rel=1e-13))
    expected = (1.6 - math.sqrt(1.6 ** 2 - 32.0 * 0.0375)) / (2.0 * 0.0375)
    assert dyda_upper_2d(2.0) == pytest.approx(expected, rel=1e-12)


def test_classical_disk_eigenvalue_is_below_every_bound():
    for fn in FIRST_BOUNDS.values():
        assert fn(2.0) > J01_SQUARED


@pytest.mark.parametrize("alpha", np.linspace(0.05, 2.0, 40))
def test_strongest_bound_is_the_minimum(alpha):
    alpha = float(alpha)
    assert 0.0 < dyda_upper_2d(alpha) < math.inf
    assert disk_first_upper(alpha).value == min(f(alpha) for f in FIRST_BOUNDS.values())


def test_bounds_tend_to_one_at_zero():
    for fn in FIRST_BOUNDS.values():
        assert fn(1e-9) == pytest.approx(1.0, abs=1e-8)


def mp_dyda(alpha):
    """(P - sqrt(P^2 - QR)) / (2R) at 50 digits."""
    with mp.workdps(50):
        a = mp.mpf(alpha)
        g = mp.gamma(a / 2 + 1)
        pi2 = mp.pi ** 2
        P = (pi2 * 2 ** (a - 1) * g ** 2 * (a + 4) * (a * a + 3 * a + 6)
             / ((a + 1) * (a + 3) * (a + 6)))
        Q = pi2 * 4 ** (a + 1) * g ** 4 * (a + 2) / (a + 6)
        R = pi2 * (a + 4) ** 2 / (4 * (a + 1) * (a + 2) ** 2 * (a + 3))
        return float((P - mp.sqrt(P * P - Q * R)) / (2 * R))


@pytest.mark.parametrize("alpha", [1e-12, 1e-9, 1e-6, 1e-3, 0.1, 0.5, 0.984, 1.5, 2.0])
def test_dyda_matches_high_precision(alpha):
    assert dyda_upper_2d(alpha) == pytest.approx(mp_dyda(alpha), rel=1e-12)


def test_dyda_slope_at_small_alpha():
    alpha = 1e-9
    assert dyda_upper_2d(alpha) - 1.0 == pytest.approx(mp_dyda(alpha) - 1.0, rel=1e-4)


@pytest.mark.parametrize("alpha", [1e-9, 0.3, 1.0, 2.0])
def test_dyda_factored_root(alpha):
    pqr = dyda_pqr(alpha)
    assert pqr.root >= 0.0
    assert pqr.root ** 2 == pytest.approx(pqr.discriminant, rel=1e-9, abs=1e-12 * pqr.P ** 2)


def test_dyda_inconsistent_triple_raises(monkeypatch):
    from FracPolya.core import bounds

    real = bounds.dyda_pqr

    def skewed(alpha):
        pqr = real(alpha)
        return bounds.PQRTriple(pqr.P, 1.01 * pqr.Q, pqr.R, pqr.alpha)

    monkeypatch.setattr(bounds, "dyda_pqr", skewed)
    with pytest.raises(ConsistencyError):
        bounds.dyda_upper_2d(1.0)


ALPHA_GRID = [round(0.01 * i, 2) for i in range(1, 201)]


def test_dyda_never_exceeds_dkk():
    for alpha in ALPHA_GRID:
        assert dyda_upper_2d(alpha) <= dkk_upper_2d(alpha) * (1.0 + 1e-12), alpha


@pytest.mark.parametrize("name,crossing", sorted(PUBLISHED_THRESHOLDS['disk'].items()))
def test_disk_bounds_beat_two_pow_alpha_below_crossing(name, crossing):
    below = [a for a in ALPHA_GRID if a < crossing - 1e-3]
    assert below
    for alpha in below:
        assert first_bound(name, alpha) < 2.0 ** alpha, alpha


def test_partii_logform_sign_matches_dkk_comparison():
    for alpha in ALPHA_GRID:
        assert np.sign(partii_logform(alpha)) == np.sign(dkk_upper_2d(alpha) - 2.0 ** alpha), alpha


def test_bk_crosses_two_pow_alpha_near_0_699():
    assert bk_upper_2d(0.69) < 2.0 ** 0.69
    assert bk_upper_2d(0.71) > 2.0 ** 0.71


def test_partii_logform():
    assert partii_logform(0.0) == pytest.approx(0.0, abs=1e-12)
    assert partii_logform(0.5) < 0.0
    assert partii_logform(0.8) < 0.0
    assert partii_logform(0.9) > 0.0
    for alpha in (0.2, 0.8, 1.3, 2.0):
        assert partii_logform(alpha) == pytest.approx(
            math.log(dkk_upper_2d(alpha)) - alpha * math.log(2.0), abs=1e-12)


def test_partii_logform_is_convex():
    values = np.array([partii_logform(a) for a in np.linspace(0.0, 2.0, 201)])
    assert np.all(values[:-2] - 2.0 * values[1:-1] + values[2:] >= -1e-9)


def test_kkms_values():
    assert kkms_linear_upper(4) == pytest.approx(2.0 * math.pi - math.pi / 40.0, rel=1e-14)
    with pytest.raises(DomainError):
        kkms_linear_upper(3)
    assert kkms_table_upper(2) == 2.76
    lo, hi = kkms_table_bracket(1)
    assert (lo, hi) == (pytest.approx(1.15), pytest.approx(1.16))
    with pytest.raises(DomainError):
        kkms_table_upper(4)


def test_kwasnicki():
    assert kwasnicki_relative_correction(20, 1.0) == pytest.approx(0.9875, rel=1e-14)
    assert kwasnicki_relative_correction(4, 1.0) == pytest.approx(0.9375, rel=1e-14)
    assert kwasnicki_asymptotic(1, 1.0) == pytest.approx(math.pi / 2 - math.pi / 8, rel=1e-14)
    assert kwasnicki_asymptotic(3, 2.0) == pytest.approx((1.5 * math.pi) ** 2, rel=1e-14)
    est = kwasnicki_estimate(2, 1.0, L=4.0)
    assert est.kind is EstimateKind.ASYMPTOTIC_APPROX and not est.rigorous
    assert est.value == pytest.approx(0.5 * kwasnicki_asymptotic(2, 1.0), rel=1e-14)


def test_liyau_and_scaling():
    assert liyau_lower_sum(1, 1.0, 2.0) == pytest.approx(math.pi / 4.0, rel=1e-14)
    assert liyau_lower_sum(3, 2.0, math.pi) == pytest.approx(9.0, rel=1e-14)
    assert scale_interval_estimate(3.0, 1.5, 2.0, 4.0) == pytest.approx(3.0 * 0.5 ** 1.5)
    with pytest.raises(DomainError):
        scale_interval_estimate(-1.0, 1.0, 2.0, 4.0)


def test_estimates():
    assert kkms_estimate(1).kind is EstimateKind.TABLE_UPPER
    assert kkms_estimate(5).kind is EstimateKind.LINEAR_UPPER
    assert kkms_estimate(5, L=4.0).value == pytest.approx(kkms_linear_upper(5) / 2.0)
    with pytest.raises(DomainError):
        EigenEstimate(1, 0.5, DomainSpec.interval(2.0), 1.0, EstimateKind.TABLE_UPPER)
    with pytest.raises(DomainError):
        EigenEstimate(1, 0.5, DomainSpec.unit_disk(), -1.0, EstimateKind.RITZ_UPPER)
    sq = square_first_upper(0.3)
    assert sq.domain == DomainSpec.square() and sq.rigorous
    assert polya_estimate(1, DomainSpec.unit_disk(), 1.0).value == pytest.approx(2.0)
    assert polya_estimate(1, DomainSpec.unit_disk(), 1.0).to_dict()["kind"] == "PolyaTerm"


def test_first_bound_dispatch():
    assert first_bound('dkk', 0.5) == dkk_upper_2d(0.5)
    with pytest.raises(DomainError):
        first_bound('nope', 0.5)
