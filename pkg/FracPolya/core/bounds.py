"""
FracPolya Bounds - closed-form eigenvalue bounds and asymptotics.

Interval (0, 2):
- kkms_table_upper / kkms_linear_upper   explicit alpha = 1 estimates
- kwasnicki_asymptotic                   leading term, any alpha
- liyau_lower_sum                        lower bound on eigenvalue sums

Unit disk, first eigenvalue:
- bk_upper / bk_upper_2d                 simplest bound
- dkk_upper_2d                           stronger, with partii_logform as its
                                         analytic comparison against 2^alpha
- dyda_pqr / dyda_upper_2d               strongest

Products of gamma factors are evaluated in log space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal
from enum import Enum
from typing import Callable, Dict, Tuple

from .defaultsConfig import KKMS_ROUNDING, KKMS_TABLE, VERDICT_DEFAULTS
from .errors import ConsistencyError, DomainError
from .specfun import DomainSpec, log_gamma, polya_term

_LN2 = math.log(2.0)
_PI2 = math.pi ** 2


class FractionalOrder(float):
    """The exponent alpha, restricted to (0, 2]."""

    def __new__(cls, value):
        alpha = float(value)
        if not (0.0 < alpha <= 2.0):
            raise DomainError(f"alpha must lie in (0, 2], got {value!r}")
        return super().__new__(cls, alpha)


def check_alpha(alpha: float, allow_zero: bool = False) -> float:
    if not allow_zero:
        return float(FractionalOrder(alpha))
    alpha = float(alpha)
    if not (0.0 <= alpha <= 2.0):
        raise DomainError(f"alpha must lie in [0, 2], got {alpha!r}")
    return alpha


def _check_n(n: int, least: int = 1) -> int:
    if isinstance(n, bool) or int(n) != n or n < least:
        raise DomainError(f"n must be an integer >= {least}, got {n!r}")
    return int(n)


def _check_positive(name: str, value: float) -> float:
    value = float(value)
    if not (value > 0.0 and math.isfinite(value)):
        raise DomainError(f"{name} must be positive and finite, got {value!r}")
    return value


# ============================================================
# ESTIMATES
# ============================================================

class EstimateKind(Enum):
    RITZ_UPPER = "RitzUpper"
    CLOSED_FORM_UPPER = "ClosedFormUpper"
    ASYMPTOTIC_APPROX = "AsymptoticApprox"
    LINEAR_UPPER = "LinearUpper"
    TABLE_UPPER = "TableUpper"
    LOWER_SUM_BOUND = "LowerSumBound"
    POLYA_TERM = "PolyaTerm"


# Kinds that may certify a counterexample
RIGOROUS_KINDS = frozenset({
    EstimateKind.RITZ_UPPER,
    EstimateKind.CLOSED_FORM_UPPER,
    EstimateKind.LINEAR_UPPER,
    EstimateKind.TABLE_UPPER,
})


@dataclass(frozen=True)
class EigenEstimate:
    """A number attached to (domain, alpha, n) with a kind tag."""

    n: int
    alpha: float
    domain: DomainSpec
    value: float
    kind: EstimateKind

    def __post_init__(self):
        if not (self.value > 0.0 and math.isfinite(self.value)):
            raise DomainError(f"estimate value must be positive, got {self.value!r}")
        if self.kind is EstimateKind.TABLE_UPPER:
            if not (self.alpha == 1.0 and self.domain == DomainSpec.interval(2.0)
                    and self.n in KKMS_TABLE):
                raise DomainError("table estimates exist only for alpha=1, L=2, n=1..3")

    @property
    def rigorous(self) -> bool:
        return self.kind in RIGOROUS_KINDS

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "alpha": self.alpha,
            "domain": self.domain.label,
            "value": self.value,
            "kind": self.kind.value,
        }


# ============================================================
# UNIT DISK / UNIT BALL
# ============================================================

def bk_upper(alpha: float, d: int) -> float:
    """Banuelos-Kulczycki bound for lambda_1(alpha) on the unit ball in R^d."""
    alpha = check_alpha(alpha)
    if isinstance(d, bool) or int(d) != d or d < 1:
        raise DomainError(f"dimension must be an integer >= 1, got {d!r}")
    half_d = 0.5 * d
    log_value = (
        (alpha + 1.0) * _LN2
        + 2.0 * log_gamma(0.5 * alpha + 1.0)
        + log_gamma(half_d + alpha + 1.0)
        - math.log(d + alpha)
        - log_gamma(alpha + 1.0)
        - log_gamma(half_d)
    )
    return math.exp(log_value)


def bk_upper_2d(alpha: float) -> float:
    alpha = check_alpha(alpha)
    log_value = (
        (alpha + 1.0) * _LN2
        + math.log(alpha + 1.0)
        + 2.0 * log_gamma(0.5 * alpha + 1.0)
        - math.log(alpha + 2.0)
    )
    return math.exp(log_value)


def dkk_upper_2d(alpha: float) -> float:
    """Dyda-Kuznetsov-Kwasnicki bound for lambda_1(alpha) on the unit disk."""
    alpha = check_alpha(alpha)
    log_value = (
        (alpha - 1.0) * _LN2
        + math.log(alpha + 2.0)
        + math.log(7.0 * alpha + 24.0)
        + 2.0 * log_gamma(0.5 * alpha + 1.0)
        - math.log(alpha + 4.0)
        - math.log(alpha + 6.0)
    )
    return math.exp(log_value)


@dataclass(frozen=True)
class PQRTriple:
    P: float
    Q: float
    R: float
    alpha: float

    @property
    def discriminant(self) -> float:
        """P^2 - QR as written; loses every digit once alpha^2 is near machine epsilon."""
        return self.P * self.P - self.Q * self.R

    @property
    def root(self) -> float:
        """
        sqrt(P^2 - QR) in factored form.

        P^2 - QR = P^2 alpha^2 (alpha^3 + 8 alpha^2 + 29 alpha + 38)
                   / ((alpha + 2) (alpha^2 + 3 alpha + 6)^2)
        """
        a = self.alpha
        cubic = ((a + 8.0) * a + 29.0) * a + 38.0
        return self.P * a * math.sqrt(cubic / (a + 2.0)) / ((a + 3.0) * a + 6.0)


def dyda_pqr(alpha: float) -> PQRTriple:
    alpha = check_alpha(alpha)
    lg = log_gamma(0.5 * alpha + 1.0)
    P = math.exp(
        (alpha - 1.0) * _LN2 + 2.0 * lg
        + math.log(alpha + 4.0) + math.log(alpha * alpha + 3.0 * alpha + 6.0)
        - math.log(alpha + 1.0) - math.log(alpha + 3.0) - math.log(alpha + 6.0)
    ) * _PI2
    Q = math.exp(
        2.0 * (alpha + 1.0) * _LN2 + 4.0 * lg
        + math.log(alpha + 2.0) - math.log(alpha + 6.0)
    ) * _PI2
    R = _PI2 * (alpha + 4.0) ** 2 / (
        4.0 * (alpha + 1.0) * (alpha + 2.0) ** 2 * (alpha + 3.0))
    return PQRTriple(P, Q, R, alpha)


def dyda_upper_2d(alpha: float) -> float:
    """Dyda bound (P - sqrt(P^2 - QR)) / (2R)."""
    pqr = dyda_pqr(alpha)
    root = pqr.root
    disc = pqr.discriminant
    if abs(disc - root * root) > VERDICT_DEFAULTS['discriminant_tol'] * pqr.P ** 2:
        raise ConsistencyError(
            f"Dyda discriminant {disc!r} disagrees with its factored form {root * root!r} "
            f"at alpha={alpha!r} (P={pqr.P!r})")
    # equal to (P - root) / (2R), without the cancellation near alpha = 0
    return pqr.Q / (2.0 * (pqr.P + root))


def partii_logform(alpha: float) -> float:
    """Negative exactly where dkk_upper_2d(alpha) < 2^alpha; zero at alpha = 0."""
    alpha = check_alpha(alpha, allow_zero=True)
    return (
        2.0 * log_gamma(0.5 * alpha + 2.0)
        - math.log((alpha + 2.0) / (7.0 * alpha + 24.0))
        - math.log(alpha + 4.0)
        - math.log(alpha + 6.0)
        + _LN2
    )


# ============================================================
# INTERVAL
# ============================================================

def kwasnicki_asymptotic(n: int, alpha: float) -> float:
    """Leading term (n pi/2 - (2 - alpha) pi/8)^alpha on an interval of length 2."""
    n = _check_n(n)
    alpha = check_alpha(alpha)
    base = n * math.pi / 2.0 - (2.0 - alpha) * math.pi / 8.0
    if base <= 0.0:
        raise DomainError(f"asymptotic base is not positive for n={n}, alpha={alpha}")
    return base ** alpha


def kwasnicki_relative_correction(n: int, alpha: float) -> float:
    """First-order ratio lambda_n / (n pi/2)^alpha."""
    n = _check_n(n)
    alpha = check_alpha(alpha)
    return 1.0 - alpha * (2.0 - alpha) / (4.0 * n)


def kkms_linear_upper(n: int) -> float:
    """lambda_n(1) < n pi/2 - pi/40 on (0, 2), valid for n >= 4."""
    n = _check_n(n, least=4)
    return n * math.pi / 2.0 - math.pi / 40.0


def kkms_table_upper(n: int) -> float:
    if isinstance(n, bool) or n not in KKMS_TABLE:
        raise DomainError(f"the KKMS table covers n = 1, 2, 3 only, got {n!r}")
    return float(KKMS_TABLE[n])


def kkms_table_bracket(n: int) -> Tuple[float, float]:
    """(v - 0.01, v]: the table was rounded up to two decimals."""
    kkms_table_upper(n)
    value: Decimal = KKMS_TABLE[n]
    return float(value - KKMS_ROUNDING), float(value)


def liyau_lower_sum(n: int, alpha: float, L: float) -> float:
    """(pi/L)^alpha n^(1+alpha) / (1+alpha) <= sum_{k<=n} lambda_k(alpha)."""
    n = _check_n(n)
    alpha = check_alpha(alpha)
    L = _check_positive("L", L)
    return (math.pi / L) ** alpha * n ** (1.0 + alpha) / (1.0 + alpha)


def scale_interval_estimate(value: float, alpha: float, from_L: float, to_L: float) -> float:
    """Dilation (0, from_L) -> (0, to_L) scales eigenvalues by (from_L/to_L)^alpha."""
    value = _check_positive("value", value)
    alpha = check_alpha(alpha)
    from_L = _check_positive("from_L", from_L)
    to_L = _check_positive("to_L", to_L)
    return value * (from_L / to_L) ** alpha


# ============================================================
# ESTIMATE BUILDERS
# ============================================================

def disk_first_upper(alpha: float) -> EigenEstimate:
    """Strongest of the three closed-form bounds for lambda_1 on the unit disk."""
    alpha = check_alpha(alpha)
    value = min(bk_upper_2d(alpha), dkk_upper_2d(alpha), dyda_upper_2d(alpha))
    return EigenEstimate(1, alpha, DomainSpec.unit_disk(), value,
                         EstimateKind.CLOSED_FORM_UPPER)


def square_first_upper(alpha: float) -> EigenEstimate:
    """The disk lies inside the square, so its bound also bounds the square."""
    disk = disk_first_upper(alpha)
    return EigenEstimate(1, disk.alpha, DomainSpec.square(), disk.value,
                         EstimateKind.CLOSED_FORM_UPPER)


def kkms_estimate(n: int, L: float = 2.0) -> EigenEstimate:
    """Table value for n <= 3, linear bound beyond; alpha = 1, rescaled to L."""
    n = _check_n(n)
    if n in KKMS_TABLE:
        if L != 2.0:
            raise DomainError("table estimates are tied to L = 2")
        return EigenEstimate(n, 1.0, DomainSpec.interval(2.0), kkms_table_upper(n),
                             EstimateKind.TABLE_UPPER)
    value = scale_interval_estimate(kkms_linear_upper(n), 1.0, 2.0, L)
    return EigenEstimate(n, 1.0, DomainSpec.interval(L), value, EstimateKind.LINEAR_UPPER)


def kwasnicki_estimate(n: int, alpha: float, L: float = 2.0) -> EigenEstimate:
    value = scale_interval_estimate(kwasnicki_asymptotic(n, alpha), alpha, 2.0, L)
    return EigenEstimate(n, float(alpha), DomainSpec.interval(L), value,
                         EstimateKind.ASYMPTOTIC_APPROX)


def polya_estimate(n: int, dom: DomainSpec, alpha: float) -> EigenEstimate:
    return EigenEstimate(n, float(alpha), dom, polya_term(n, dom, alpha),
                         EstimateKind.POLYA_TERM)


FIRST_BOUNDS: Dict[str, Callable[[float], float]] = {
    'bk': bk_upper_2d,
    'dkk': dkk_upper_2d,
    'dyda': dyda_upper_2d,
}


def first_bound(name: str, alpha: float) -> float:
    """Dispatch by short name: 'bk', 'dkk', 'dyda'."""
    fn = FIRST_BOUNDS.get(name)
    if fn is None:
        raise DomainError(f"unknown disk bound {name!r}")
    return fn(alpha)


__all__ = [
    "FractionalOrder", "check_alpha", "EstimateKind", "RIGOROUS_KINDS", "EigenEstimate",
    "bk_upper", "bk_upper_2d", "dkk_upper_2d", "PQRTriple", "dyda_pqr", "dyda_upper_2d",
    "partii_logform", "kwasnicki_asymptotic", "kwasnicki_relative_correction",
    "kkms_linear_upper", "kkms_table_upper", "kkms_table_bracket", "liyau_lower_sum",
    "scale_interval_estimate", "disk_first_upper", "square_first_upper",
    "kkms_estimate", "kwasnicki_estimate", "polya_estimate", "FIRST_BOUNDS", "first_bound",
]
