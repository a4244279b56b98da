"""
FracPolya Special Functions - gamma, unit-ball volumes and the Weyl/Polya term.

Everything here is a pure function of its arguments.

Usage:
    from .specfun import gamma, polya_term, DomainSpec

    gamma(1.5)                                   # sqrt(pi)/2
    polya_term(1, DomainSpec.unit_disk(), 0.5)   # 2**0.5
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError

# Lanczos approximation, g = 7, n = 9
_LANCZOS_G = 7.0
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)

# ln Gamma(1+z) = -gamma z + sum_{k>=2} (-1)^k zeta(k) z^k / k, used for |z| < radius
_EULER_GAMMA = 0.57721566490153286061
_SERIES_RADIUS = 0.5
_SERIES_TERMS = 60
_ZETA_ODD = {3: 1.2020569031595942854, 5: 1.0369277551433699263,
             7: 1.0083492773819228268, 9: 1.0020083928260822144}
_ZETA_EVEN_DENOM = {2: 6.0, 4: 90.0, 6: 945.0, 8: 9450.0, 10: 93555.0}


def _zeta(k: int) -> float:
    if k in _ZETA_EVEN_DENOM:
        return math.pi ** k / _ZETA_EVEN_DENOM[k]
    if k in _ZETA_ODD:
        return _ZETA_ODD[k]
    # k >= 11: the tail past n = 64 is below 1e-19
    return 1.0 + math.fsum(n ** -float(k) for n in range(2, 65))


_SERIES_COEFFS = tuple((-1.0) ** k * _zeta(k) / k for k in range(2, _SERIES_TERMS + 1))


def _log_gamma_one_plus(z: float) -> float:
    acc = 0.0
    for c in reversed(_SERIES_COEFFS):
        acc = c + z * acc
    return z * (-_EULER_GAMMA + z * acc)


def log_gamma(x: float) -> float:
    """
    ln Gamma(x) for x > 0.

    Lanczos away from the zeros at x = 1 and x = 2; around them the Taylor
    series of ln Gamma(1+z), so the relative error stays small there too.
    """
    x = float(x)
    if not x > 0.0 or math.isinf(x):
        raise DomainError(f"log_gamma needs a positive finite argument, got {x!r}")
    if abs(x - 1.0) < _SERIES_RADIUS:
        return _log_gamma_one_plus(x - 1.0)
    if abs(x - 2.0) < _SERIES_RADIUS:
        z = x - 2.0
        return math.log1p(z) + _log_gamma_one_plus(z)
    if x < 0.5:
        # reflection onto 1 - x > 0.5
        return math.log(math.pi / math.sin(math.pi * x)) - log_gamma(1.0 - x)
    z = x - 1.0
    acc = _LANCZOS_COEFFS[0]
    for i, c in enumerate(_LANCZOS_COEFFS[1:], start=1):
        acc += c / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_TWO_PI + (z + 0.5) * math.log(t) - t + math.log(acc)


def gamma(x: float) -> float:
    return math.exp(log_gamma(x))


def _check_dimension(d: int) -> int:
    if isinstance(d, bool) or int(d) != d or d < 1:
        raise DomainError(f"dimension must be an integer >= 1, got {d!r}")
    return int(d)


def unit_ball_volume(d: int) -> float:
    """omega_d = pi^(d/2) / Gamma(d/2 + 1)."""
    d = _check_dimension(d)
    return math.exp(0.5 * d * math.log(math.pi) - log_gamma(0.5 * d + 1.0))


def weyl_constant(d: int) -> float:
    """C_d = (2 pi)^d / omega_d."""
    d = _check_dimension(d)
    return (2.0 * math.pi) ** d / unit_ball_volume(d)


class DomainKind(Enum):
    INTERVAL = "interval"
    UNIT_DISK = "unit_disk"
    SQUARE = "square"


@dataclass(frozen=True)
class DomainSpec:
    """Interval (0, L), the unit disk, or the square (-1, 1) x (-1, 1)."""

    kind: DomainKind
    length: float = 0.0

    def __post_init__(self):
        if self.kind is DomainKind.INTERVAL:
            if not (self.length > 0.0 and math.isfinite(self.length)):
                raise DomainError(f"interval length must be positive, got {self.length!r}")
        elif self.length:
            raise DomainError(f"{self.kind.value} takes no length")

    @classmethod
    def interval(cls, length: float) -> "DomainSpec":
        return cls(DomainKind.INTERVAL, float(length))

    @classmethod
    def unit_disk(cls) -> "DomainSpec":
        return cls(DomainKind.UNIT_DISK)

    @classmethod
    def square(cls) -> "DomainSpec":
        return cls(DomainKind.SQUARE)

    @property
    def d(self) -> int:
        return 1 if self.kind is DomainKind.INTERVAL else 2

    @property
    def volume(self) -> float:
        if self.kind is DomainKind.INTERVAL:
            return self.length
        if self.kind is DomainKind.UNIT_DISK:
            return math.pi
        return 4.0  # side 2

    @property
    def label(self) -> str:
        if self.kind is DomainKind.INTERVAL:
            return f"interval(L={self.length:g})"
        return self.kind.value


def polya_term(n: int, dom: DomainSpec, alpha: float) -> float:
    """(n C_d / V)^(alpha/d), evaluated in log space."""
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    if not alpha > 0.0:
        raise DomainError(f"alpha must be positive, got {alpha!r}")
    d = dom.d
    log_ratio = math.log(n) + math.log(weyl_constant(d)) - math.log(dom.volume)
    return math.exp((alpha / d) * log_ratio)


__all__ = [
    "log_gamma", "gamma", "unit_ball_volume", "weyl_constant",
    "DomainKind", "DomainSpec", "polya_term",
]
