"""
FracPolya Verdicts - verification suites for the fractional Polya question.

Compares eigenvalue estimates against the Polya term (n C_d / |Omega|)^(alpha/d)
and checks the sum bounds, monotonicity in alpha, Weyl asymptotics and the
alpha-thresholds where the closed-form disk bounds cross the Polya term.

Soundness: only upper-bound kinds (Ritz, closed form, linear, table) can
confirm a counterexample; an upper bound below the Polya term certifies that
the true eigenvalue is below it too. Asymptotic inputs are always heuristic.

Usage:
    from .verdicts import SuiteRunner

    runner = SuiteRunner(N=256)
    report = runner.run('all')
    report.overall            # 'pass' / 'fail'
    report.to_dict()          # JSON-ready
"""

from __future__ import annotations

import math
import platform
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..__version__ import __version__
from .bounds import (EigenEstimate, EstimateKind, check_alpha, disk_first_upper, first_bound,
                     kkms_estimate, kkms_linear_upper, kkms_table_bracket, kwasnicki_estimate,
                     kwasnicki_relative_correction, liyau_lower_sum, bk_upper_2d,
                     polya_estimate, square_first_upper)
from .defaultsConfig import (CLI_DEFAULTS, KKMS_TABLE, PUBLISHED_THRESHOLDS, SOLVER_DEFAULTS,
                             VERDICT_DEFAULTS, debug_module)
from .errors import BracketingError, DomainError, InputError, NumericError
from .interval_solver import (QuadratureSpec, RitzSpectrum, StiffnessMatrix, form_value,
                              load_or_assemble, ritz_upper_bounds)


# ============================================================
# RECORDS
# ============================================================

class Verdict(Enum):
    COUNTEREXAMPLE_CONFIRMED = "CounterexampleConfirmed"
    INCONCLUSIVE = "Inconclusive"
    BOUND_TOO_WEAK = "BoundTooWeak"


class Tag(Enum):
    PUBLISHED = "published"
    TRIVIAL = "trivial"
    DERIVED = "derived"


@dataclass(frozen=True)
class DeficitRecord:
    estimate: EigenEstimate
    polya: float
    deficit: float
    verdict: Verdict
    margin: float
    heuristic: bool

    @property
    def n(self) -> int:
        return self.estimate.n

    @property
    def alpha(self) -> float:
        return self.estimate.alpha

    @property
    def passed(self) -> bool:
        return self.verdict is not Verdict.BOUND_TOO_WEAK

    def to_dict(self) -> Dict[str, Any]:
        return {
            "record": "deficit",
            "n": self.n,
            "alpha": self.alpha,
            "domain": self.estimate.domain.label,
            "estimate": self.estimate.value,
            "kind": self.estimate.kind.value,
            "polya": self.polya,
            "deficit": self.deficit,
            "margin": self.margin,
            "verdict": self.verdict.value,
            "heuristic": self.heuristic,
            "passed": self.passed,
        }


@dataclass(frozen=True)
class ThresholdResult:
    bound_name: str
    target_name: str
    alpha_star: float
    bracket: Tuple[float, float]
    residual: float
    iterations: int
    expected: Optional[float] = None

    @property
    def passed(self) -> bool:
        lo, hi = self.bracket
        if not lo < self.alpha_star < hi:
            return False
        if self.expected is None:
            return True
        return abs(self.alpha_star - self.expected) <= VERDICT_DEFAULTS['threshold_agreement']

    def to_dict(self) -> Dict[str, Any]:
        return {
            "record": "threshold",
            "bound": self.bound_name,
            "target": self.target_name,
            "alpha_star": self.alpha_star,
            "bracket": list(self.bracket),
            "residual": self.residual,
            "iterations": self.iterations,
            "expected": self.expected,
            "tag": Tag.PUBLISHED.value if self.expected is not None else Tag.DERIVED.value,
            "passed": self.passed,
        }


@dataclass(frozen=True)
class NonexistenceRecord:
    """The bound stays above the target on the whole grid."""

    bound_name: str
    target_name: str
    grid: Tuple[float, float, float]
    min_gap: float
    argmin: float

    @property
    def passed(self) -> bool:
        return self.min_gap > 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "record": "nonexistence",
            "bound": self.bound_name,
            "target": self.target_name,
            "grid": list(self.grid),
            "min_gap": self.min_gap,
            "argmin": self.argmin,
            "tag": Tag.PUBLISHED.value,
            "passed": self.passed,
        }


@dataclass(frozen=True)
class PropertyOutcome:
    name: str
    passed: bool
    value: float
    limit: float
    tag: Tag = Tag.DERIVED
    heuristic: bool = False
    detail: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "record": "property",
            "name": self.name,
            "value": self.value,
            "limit": self.limit,
            "tag": self.tag.value,
            "heuristic": self.heuristic,
            "detail": self.detail,
            "passed": bool(self.passed),
        }


def build_provenance() -> Dict[str, str]:
    return {
        "package": __version__,
        "numpy": np.__version__,
        "python": platform.python_version(),
        "timestamp": datetime.now(timezone.utc).isoformat(timespec='seconds'),
        "cache_env_var": CLI_DEFAULTS['cache_env_var'],
    }


@dataclass
class VerdictReport:
    suite: str
    parameters: Dict[str, Any]
    records: List[Any] = field(default_factory=list)
    provenance: Dict[str, str] = field(default_factory=build_provenance)

    @property
    def passed(self) -> bool:
        return all(record.passed for record in self.records)

    @property
    def overall(self) -> str:
        return "pass" if self.passed else "fail"

    def failures(self) -> List[Any]:
        return [record for record in self.records if not record.passed]

    def to_dict(self, include_timestamp: bool = True) -> Dict[str, Any]:
        provenance = dict(self.provenance)
        if not include_timestamp:
            provenance.pop("timestamp", None)
        return {
            "schema_version": CLI_DEFAULTS['schema_version'],
            "suite": self.suite,
            "parameters": _jsonable(self.parameters),
            "overall": self.overall,
            "records": [_record_dict(r, include_timestamp) for r in self.records],
            "provenance": provenance,
        }


def _record_dict(record, include_timestamp: bool) -> Dict[str, Any]:
    if isinstance(record, VerdictReport):
        nested = record.to_dict(include_timestamp)
        nested["record"] = "report"
        nested["passed"] = record.passed
        return nested
    return record.to_dict()


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.generic):
        return value.item()
    return value


# ============================================================
# POLYA DEFICITS
# ============================================================

def deficit_record(estimate: EigenEstimate,
                   margin: float = VERDICT_DEFAULTS['margin']) -> DeficitRecord:
    """Compare one upper-bound estimate with its Polya term."""
    if estimate.kind in (EstimateKind.LOWER_SUM_BOUND, EstimateKind.POLYA_TERM):
        raise InputError(f"{estimate.kind.value} is not an eigenvalue estimate")
    if not margin > 0.0:
        raise DomainError(f"margin must be positive, got {margin!r}")
    polya = polya_estimate(estimate.n, estimate.domain, estimate.alpha).value
    deficit = estimate.value - polya
    if deficit < -margin:
        verdict = Verdict.COUNTEREXAMPLE_CONFIRMED if estimate.rigorous else Verdict.INCONCLUSIVE
    elif deficit > margin:
        verdict = Verdict.BOUND_TOO_WEAK
    else:
        verdict = Verdict.INCONCLUSIVE
    return DeficitRecord(estimate, polya, deficit, verdict, margin, not estimate.rigorous)


def polya_check_interval(spectrum: RitzSpectrum,
                         margin: float = VERDICT_DEFAULTS['margin']) -> List[DeficitRecord]:
    """One record per trusted Ritz value n <= N/4."""
    return [deficit_record(spectrum.estimate(n), margin)
            for n in range(1, spectrum.trusted_count + 1)]


def polya_check_bounds(alpha_grid: Sequence[float] = VERDICT_DEFAULTS['bounds_grid'],
                       margin: float = VERDICT_DEFAULTS['margin']) -> VerdictReport:
    """
    Deficits of the closed-form estimates.

    The disk and square bounds are checked only below the largest published
    crossing for that domain, where they are claimed to win.
    """
    grid = [check_alpha(a) for a in alpha_grid]
    nmax = VERDICT_DEFAULTS['linear_nmax']
    report = VerdictReport("bounds", {"alpha_grid": grid, "margin": margin, "linear_nmax": nmax})
    for n in range(1, nmax + 1):
        report.records.append(deficit_record(kkms_estimate(n), margin))
    for alpha in grid:
        for n in range(1, nmax + 1):
            report.records.append(deficit_record(kwasnicki_estimate(n, alpha), margin))
    disk_limit = max(PUBLISHED_THRESHOLDS['disk'].values())
    square_limit = max(PUBLISHED_THRESHOLDS['square'].values())
    for alpha in grid:
        if alpha < disk_limit:
            report.records.append(deficit_record(disk_first_upper(alpha), margin))
        if alpha < square_limit:
            report.records.append(deficit_record(square_first_upper(alpha), margin))
    return report


# ============================================================
# SUM BOUNDS
# ============================================================

def liyau_check(spectrum: RitzSpectrum) -> VerdictReport:
    """Ritz partial sums never fall below the Li-Yau lower sum."""
    sums = spectrum.partial_sums()
    report = VerdictReport("liyau", {"alpha": spectrum.alpha, "L": spectrum.L, "N": spectrum.N})
    for n in range(1, spectrum.N + 1):
        lower = liyau_lower_sum(n, spectrum.alpha, spectrum.L)
        total = float(sums[n - 1])
        report.records.append(PropertyOutcome(f"liyau n={n}", total >= lower, total, lower,
                                              Tag.PUBLISHED))
    return report


def two_sided_check_alpha1(spectrum: RitzSpectrum) -> VerdictReport:
    """pi n^2 / (2L) <= sum_{k<=n} lambda_k(1) < pi n (n+1) / (2L)."""
    if spectrum.alpha != 1.0:
        raise DomainError(f"two-sided sum bound needs alpha = 1, got {spectrum.alpha!r}")
    L = spectrum.L
    sums = spectrum.partial_sums()
    report = VerdictReport("twosided", {"alpha": 1.0, "L": L, "N": spectrum.N})
    for n in range(1, spectrum.N + 1):
        total = float(sums[n - 1])
        lower = math.pi * n * n / (2.0 * L)
        report.records.append(PropertyOutcome(f"lower n={n}", total >= lower, total, lower,
                                              Tag.PUBLISHED))
    # Ritz sums overestimate, so the upper side is not a proof
    for n in range(1, spectrum.trusted_count + 1):
        total = float(sums[n - 1])
        upper = math.pi * n * (n + 1) / (2.0 * L)
        report.records.append(PropertyOutcome(f"upper n={n}", total < upper, total, upper,
                                              Tag.PUBLISHED, heuristic=True))
    return report


# ============================================================
# MONOTONICITY AND ASYMPTOTICS
# ============================================================

SpectrumSource = Callable[[float], RitzSpectrum]


def monotonicity_check(n_max: int, alpha_grid: Sequence[float],
                       L: float = SOLVER_DEFAULTS['length'],
                       N: int = SOLVER_DEFAULTS['basis'],
                       quad: Optional[QuadratureSpec] = None,
                       spectrum_for: Optional[SpectrumSource] = None) -> VerdictReport:
    """lambda_n(alpha)^(1/alpha) is nondecreasing in alpha, within a relative tolerance."""
    grid = [check_alpha(a) for a in alpha_grid]
    if len(grid) < 3:
        raise InputError(f"monotonicity grid needs at least 3 points, got {len(grid)}")
    if any(b < a for a, b in zip(grid, grid[1:])):
        raise InputError("monotonicity grid must be ascending")
    if not 1 <= n_max <= N:
        raise DomainError(f"n_max must lie in 1..{N}, got {n_max!r}")
    if spectrum_for is None:
        def spectrum_for(alpha: float) -> RitzSpectrum:
            return ritz_upper_bounds(N, alpha, L, quad)

    tol_rel = VERDICT_DEFAULTS['monotone_tol_rel']
    report = VerdictReport("monotone", {"n_max": n_max, "alpha_grid": grid, "L": L, "N": N,
                                        "tol_rel": tol_rel})
    spectra = {alpha: spectrum_for(alpha) for alpha in sorted(set(grid))}
    for n in range(1, n_max + 1):
        for a, b in zip(grid, grid[1:]):
            if a == b:
                continue
            ra = spectra[a].value(n) ** (1.0 / a)
            rb = spectra[b].value(n) ** (1.0 / b)
            report.records.append(PropertyOutcome(
                f"monotone n={n} {a}->{b}", ra <= rb * (1.0 + tol_rel), ra, rb, Tag.PUBLISHED))
        for alpha in grid:
            if alpha >= 2.0:
                continue
            value = spectra[alpha].value(n)
            classical = (n * math.pi / L) ** alpha
            report.records.append(PropertyOutcome(
                f"below classical n={n} alpha={alpha}", value < classical, value, classical,
                Tag.PUBLISHED))
        if grid[-1] == 2.0:
            terminal = spectra[2.0].value(n) ** 0.5
            exact = n * math.pi / L
            report.records.append(PropertyOutcome(
                f"terminal n={n}", abs(terminal - exact) <= VERDICT_DEFAULTS['terminal_tol'],
                terminal, exact, Tag.TRIVIAL))
    return report


def weyl_ratio_check(spectrum: RitzSpectrum,
                     n_window: Tuple[int, int] = VERDICT_DEFAULTS['weyl_window']) -> VerdictReport:
    """
    r_n = lambda_n / (n pi / L)^alpha against 1 - alpha (2 - alpha) / (4n).

    The fitted coefficient is the least-squares fit of (1 - r_n) ~ c / n.
    """
    n_lo, n_hi = (int(v) for v in n_window)
    if not 1 <= n_lo <= n_hi:
        raise InputError(f"invalid window {n_window!r}")
    if n_hi > spectrum.trusted_count:
        raise InputError(f"window end {n_hi} exceeds the trusted range N/4 = "
                         f"{spectrum.trusted_count}")
    alpha, L = spectrum.alpha, spectrum.L
    ns = np.arange(n_lo, n_hi + 1)
    ratios = np.array([spectrum.value(int(n)) / (n * math.pi / L) ** alpha for n in ns])
    report = VerdictReport("weyl", {"alpha": alpha, "L": L, "N": spectrum.N,
                                    "window": [n_lo, n_hi]})
    if alpha == 2.0:
        exact_tol = VERDICT_DEFAULTS['weyl_exact_tol']
        for n, r in zip(ns, ratios):
            report.records.append(PropertyOutcome(f"ratio n={n}", abs(r - 1.0) <= exact_tol,
                                                  float(r), 1.0, Tag.TRIVIAL))
        return report

    margin = VERDICT_DEFAULTS['weyl_margin']
    for n, r in zip(ns, ratios):
        n = int(n)
        floor = kwasnicki_relative_correction(n, alpha) - (1.0 / (2.0 * n * n) + margin)
        report.records.append(PropertyOutcome(f"ratio n={n} below 1", r < 1.0, float(r), 1.0,
                                              Tag.PUBLISHED))
        report.records.append(PropertyOutcome(f"ratio n={n} above correction", r > floor,
                                              float(r), floor, Tag.DERIVED))
    inv = 1.0 / ns
    slope = float(np.dot(1.0 - ratios, inv) / np.dot(inv, inv))
    target = alpha * (2.0 - alpha) / 4.0
    report.records.append(PropertyOutcome(
        "correction coefficient", abs(slope - target) <= VERDICT_DEFAULTS['weyl_slope_tol'],
        slope, target, Tag.DERIVED, detail="least-squares fit of (1 - r_n) against 1/n"))
    return report


def kkms_consistency_check(spectrum: RitzSpectrum,
                           headroom: float = VERDICT_DEFAULTS['kkms_headroom']) -> VerdictReport:
    """Ritz values against the alpha = 1 table and the linear bound on (0, 2)."""
    if spectrum.alpha != 1.0 or spectrum.L != 2.0:
        raise DomainError("KKMS comparison needs alpha = 1 and L = 2")
    report = VerdictReport("kkms", {"alpha": 1.0, "L": 2.0, "N": spectrum.N,
                                    "headroom": headroom})
    for n in sorted(KKMS_TABLE):
        if n > spectrum.N:
            break
        lo, table = kkms_table_bracket(n)
        value = spectrum.value(n)
        report.records.append(PropertyOutcome(
            f"table n={n}", lo < value < table + headroom, value, table, Tag.PUBLISHED,
            detail=f"bracket ({lo}, {table + headroom})"))
    for n in range(4, spectrum.trusted_count + 1):
        value = spectrum.value(n)
        bound = kkms_linear_upper(n)
        report.records.append(PropertyOutcome(f"linear n={n}", value < bound, value, bound,
                                              Tag.PUBLISHED))
    return report


def jensen_check(N: int = VERDICT_DEFAULTS['jensen_basis'],
                 alphas: Sequence[float] = VERDICT_DEFAULTS['jensen_alphas'],
                 L: float = SOLVER_DEFAULTS['length'],
                 vectors: int = VERDICT_DEFAULTS['jensen_vectors'],
                 seed: int = VERDICT_DEFAULTS['jensen_seed'],
                 quad: Optional[QuadratureSpec] = None,
                 matrix_for: Optional[Callable[[float], StiffnessMatrix]] = None) -> VerdictReport:
    """
    Q_alpha(c)^(1/alpha) < Q_beta(c)^(1/beta) for alpha < beta and unit c.

    For a unit vector the form is a moment of a probability measure in xi,
    so this is Jensen's inequality; it is strict unless the measure is a point.
    """
    grid = sorted(check_alpha(a) for a in alphas)
    if len(grid) < 2:
        raise InputError("jensen check needs at least two orders")
    if matrix_for is None:
        def matrix_for(alpha: float) -> StiffnessMatrix:
            return load_or_assemble(N, alpha, L, quad)

    margin = VERDICT_DEFAULTS['jensen_margin']
    rng = np.random.default_rng(seed)
    coeffs = rng.standard_normal((vectors, N))
    coeffs /= np.linalg.norm(coeffs, axis=1)[:, None]
    roots = {}
    for alpha in grid:
        matrix = matrix_for(alpha)
        roots[alpha] = np.array([form_value(c, matrix) ** (1.0 / alpha) for c in coeffs])

    report = VerdictReport("jensen", {"N": N, "alphas": grid, "L": L, "vectors": vectors,
                                      "seed": seed, "margin": margin})
    for i, a in enumerate(grid):
        for b in grid[i + 1:]:
            gap = float(np.min(roots[b] - roots[a]))
            report.records.append(PropertyOutcome(f"jensen {a}<{b}", gap > margin, gap, margin,
                                                  Tag.PUBLISHED, detail=f"min over {vectors} vectors"))
    return report


# ============================================================
# THRESHOLDS
# ============================================================

def bisect_threshold(f: Callable[[float], float], lo: float, hi: float, tol: float,
                     bound_name: str = "f", target_name: str = "0") -> ThresholdResult:
    """Bisection on a sign-change bracket down to width <= tol."""
    if not tol > 0.0:
        raise DomainError(f"tol must be positive, got {tol!r}")
    if not lo < hi:
        raise DomainError(f"empty bracket [{lo!r}, {hi!r}]")
    flo, fhi = f(lo), f(hi)
    if not (math.isfinite(flo) and math.isfinite(fhi)):
        raise NumericError(f"non-finite value at the bracket ends of {bound_name}")
    if not flo * fhi < 0.0:
        raise BracketingError(f"{bound_name} - {target_name} has no sign change on "
                              f"[{lo!r}, {hi!r}]")
    negative_lo = flo < 0.0
    iterations = 0
    while hi - lo > tol:
        if iterations >= VERDICT_DEFAULTS['bisect_max_iter']:
            raise NumericError(f"bisection for {bound_name} exceeded its iteration budget")
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        fmid = f(mid)
        if not math.isfinite(fmid):
            raise NumericError(f"non-finite value of {bound_name} at {mid!r}")
        if fmid != 0.0 and (fmid < 0.0) == negative_lo:
            lo = mid
        else:
            hi = mid
        iterations += 1
    alpha_star = 0.5 * (lo + hi)
    return ThresholdResult(bound_name, target_name, alpha_star, (lo, hi), f(alpha_star),
                           iterations)


def scan_brackets(f: Callable[[float], float], lo: float, hi: float,
                  step: float = VERDICT_DEFAULTS['scan_step']) -> List[Tuple[float, float]]:
    """Consecutive grid points lo, lo+step, ..., hi where f changes sign."""
    if not (step > 0.0 and lo < hi):
        raise DomainError(f"invalid scan [{lo!r}, {hi!r}] with step {step!r}")
    count = int(round((hi - lo) / step))
    points = [lo + i * step for i in range(count)] + [hi]
    values = [f(x) for x in points]
    if not all(math.isfinite(v) for v in values):
        raise NumericError("non-finite value during bracket scan")
    return [(points[i], points[i + 1]) for i in range(len(points) - 1)
            if values[i] * values[i + 1] < 0.0]


def _crossing(name: str, target: Callable[[float], float], target_name: str, tol: float,
              expected: Optional[float]) -> ThresholdResult:
    def gap(alpha: float) -> float:
        return first_bound(name, alpha) - target(alpha)

    step = VERDICT_DEFAULTS['scan_step']
    brackets = scan_brackets(gap, step, 2.0, step)
    if not brackets:
        raise BracketingError(f"{name} never crosses {target_name} on [{step}, 2]")
    lo, hi = brackets[0]
    result = bisect_threshold(gap, lo, hi, tol, name, target_name)
    debug_module('verdict', f"{name} vs {target_name}: alpha* = {result.alpha_star:.6f}")
    return replace(result, expected=expected)


def _check_threshold_tol(tol: float) -> float:
    if not 0.0 < tol <= 1e-3:
        raise DomainError(f"threshold tolerance must lie in (0, 1e-3], got {tol!r}")
    return tol


def _two_pow(alpha: float) -> float:
    return 2.0 ** alpha


def _pi_pow_half(alpha: float) -> float:
    return math.pi ** (0.5 * alpha)


def disk_thresholds(tol: float = VERDICT_DEFAULTS['threshold_tol']) -> List[ThresholdResult]:
    """Where bk, dkk and dyda cross 2^alpha on the unit disk."""
    tol = _check_threshold_tol(tol)
    expected = PUBLISHED_THRESHOLDS['disk']
    return [_crossing(name, _two_pow, "2^alpha", tol, expected.get(name))
            for name in ('bk', 'dkk', 'dyda')]


def bk_square_gap(step: float = VERDICT_DEFAULTS['nonexistence_step']) -> NonexistenceRecord:
    count = int(round(2.0 / step))
    grid = np.arange(1, count) * step
    gaps = np.array([bk_upper_2d(float(a)) - _pi_pow_half(float(a)) for a in grid])
    i = int(np.argmin(gaps))
    return NonexistenceRecord("bk", "pi^(alpha/2)", (float(grid[0]), float(grid[-1]), step),
                              float(gaps[i]), float(grid[i]))


def square_thresholds(tol: float = VERDICT_DEFAULTS['threshold_tol']
                      ) -> Tuple[List[ThresholdResult], NonexistenceRecord]:
    """dyda and dkk crossings of pi^(alpha/2); bk never crosses it."""
    tol = _check_threshold_tol(tol)
    expected = PUBLISHED_THRESHOLDS['square']
    results = [_crossing(name, _pi_pow_half, "pi^(alpha/2)", tol, expected.get(name))
               for name in ('dyda', 'dkk')]
    return results, bk_square_gap()


def threshold_check(tol: float = VERDICT_DEFAULTS['threshold_tol']) -> VerdictReport:
    """All crossings, their agreement with the published values and their stability."""
    disk = disk_thresholds(tol)
    square, never = square_thresholds(tol)
    report = VerdictReport("thresholds", {"tol": tol})
    report.records.extend(disk)
    report.records.extend(square)
    report.records.append(never)

    coarse = disk_thresholds(1e-4) + square_thresholds(1e-4)[0]
    fine = disk_thresholds(1e-7) + square_thresholds(1e-7)[0]
    limit = VERDICT_DEFAULTS['threshold_stability']
    for a, b in zip(coarse, fine):
        drift = abs(a.alpha_star - b.alpha_star)
        report.records.append(PropertyOutcome(f"stable {a.bound_name} vs {a.target_name}",
                                              drift <= limit, drift, limit, Tag.DERIVED))
    by_name = {(r.target_name, r.bound_name): r.alpha_star for r in disk + square}
    disk_order = [by_name[("2^alpha", name)] for name in ('bk', 'dkk', 'dyda')]
    square_order = [by_name[("pi^(alpha/2)", name)] for name in ('dkk', 'dyda')]
    report.records.append(PropertyOutcome(
        "disk ordering bk < dkk < dyda", disk_order == sorted(disk_order) and
        len(set(disk_order)) == 3, disk_order[0], disk_order[-1], Tag.PUBLISHED))
    report.records.append(PropertyOutcome(
        "square ordering dkk < dyda", square_order[0] < square_order[1],
        square_order[0], square_order[1], Tag.PUBLISHED))
    return report


# ============================================================
# SUITE RUNNER
# ============================================================

SUITES = ('polya', 'liyau', 'twosided', 'monotone', 'weyl', 'kkms', 'jensen',
          'thresholds', 'bounds')


def check_suite_settings(suite: str, N: int, L: float) -> None:
    """Reject a basis size or length a suite cannot run with, before any work starts."""
    if suite != 'all' and suite not in SUITES:
        raise InputError(f"unknown suite {suite!r}")
    if suite in ('weyl', 'all'):
        lo = VERDICT_DEFAULTS['weyl_window'][0]
        if N // 4 < lo:
            raise DomainError(f"the weyl suite needs N/4 >= {lo}, got N = {N}")
    if suite in ('kkms', 'all') and L != 2.0:
        raise DomainError("the kkms suite is defined for L = 2")


class _MemoCache:
    """In-run memo in front of the optional disk cache."""

    def __init__(self, disk=None):
        self._disk = disk
        self._memo: Dict[Tuple, StiffnessMatrix] = {}

    @staticmethod
    def _key(N, alpha, L, quad) -> Tuple:
        return int(N), float(alpha), float(L), quad

    def load(self, N, alpha, L, quad) -> Optional[StiffnessMatrix]:
        key = self._key(N, alpha, L, quad)
        if key in self._memo:
            return self._memo[key]
        matrix = self._disk.load(N, alpha, L, quad) if self._disk is not None else None
        if matrix is not None:
            self._memo[key] = matrix
        return matrix

    def save(self, matrix: StiffnessMatrix) -> bool:
        self._memo[self._key(matrix.N, matrix.alpha, matrix.L, matrix.quad)] = matrix
        return self._disk.save(matrix) if self._disk is not None else True


class SuiteRunner:
    """Runs named suites, sharing stiffness matrices and spectra within one run."""

    def __init__(self, N: int = SOLVER_DEFAULTS['basis'], L: float = SOLVER_DEFAULTS['length'],
                 quad: Optional[QuadratureSpec] = None, cache=None,
                 workers: int = SOLVER_DEFAULTS['workers'],
                 margin: float = VERDICT_DEFAULTS['margin'],
                 alphas: Sequence[float] = VERDICT_DEFAULTS['suite_alphas'],
                 tol: float = VERDICT_DEFAULTS['threshold_tol'],
                 kkms_basis: int = VERDICT_DEFAULTS['kkms_basis']):
        self.N = int(N)
        self.L = float(L)
        self.quad = quad or QuadratureSpec()
        self.workers = workers
        self.margin = margin
        self.alphas = [check_alpha(a) for a in alphas]
        self.tol = tol
        self.kkms_basis = int(kkms_basis)
        self._cache = _MemoCache(cache)
        self._spectra: Dict[Tuple[float, float, int], RitzSpectrum] = {}
        self._suites: Dict[str, Callable[[], VerdictReport]] = {
            'polya': self.run_polya,
            'liyau': self.run_liyau,
            'twosided': self.run_twosided,
            'monotone': self.run_monotone,
            'weyl': self.run_weyl,
            'kkms': self.run_kkms,
            'jensen': self.run_jensen,
            'thresholds': lambda: threshold_check(self.tol),
            'bounds': lambda: polya_check_bounds(margin=self.margin),
        }

    def parameters(self) -> Dict[str, Any]:
        return {"N": self.N, "L": self.L, "alphas": self.alphas, "margin": self.margin,
                "abs_tol": self.quad.abs_tol, "panel_nodes": self.quad.panel_nodes,
                "threshold_tol": self.tol, "kkms_basis": self.kkms_basis}

    def matrix(self, alpha: float, N: Optional[int] = None) -> StiffnessMatrix:
        return load_or_assemble(N or self.N, alpha, self.L, self.quad, self._cache,
                                self.workers)

    def spectrum(self, alpha: float, N: Optional[int] = None) -> RitzSpectrum:
        N = N or self.N
        key = (float(alpha), self.L, N)
        if key not in self._spectra:
            self._spectra[key] = ritz_upper_bounds(N, alpha, self.L, self.quad, self._cache,
                                                   self.workers)
        return self._spectra[key]

    def run_polya(self) -> VerdictReport:
        report = VerdictReport("polya", {**self.parameters(), "trusted": self.N // 4})
        for alpha in self.alphas:
            report.records.extend(polya_check_interval(self.spectrum(alpha), self.margin))
        return report

    def run_liyau(self) -> VerdictReport:
        report = VerdictReport("liyau", self.parameters())
        report.records.extend(liyau_check(self.spectrum(alpha)) for alpha in self.alphas)
        return report

    def run_twosided(self) -> VerdictReport:
        return two_sided_check_alpha1(self.spectrum(1.0))

    def run_monotone(self) -> VerdictReport:
        n_max = min(VERDICT_DEFAULTS['monotone_nmax'], self.N // 4 or 1)
        return monotonicity_check(n_max, VERDICT_DEFAULTS['monotone_grid'], self.L, self.N,
                                  self.quad, self.spectrum)

    def run_weyl(self) -> VerdictReport:
        check_suite_settings('weyl', self.N, self.L)
        lo, hi = VERDICT_DEFAULTS['weyl_window']
        hi = min(hi, self.N // 4)
        report = VerdictReport("weyl", {**self.parameters(), "window": [lo, hi]})
        report.records.extend(weyl_ratio_check(self.spectrum(alpha), (lo, hi))
                              for alpha in self.alphas)
        return report

    def run_kkms(self) -> VerdictReport:
        check_suite_settings('kkms', self.N, self.L)
        return kkms_consistency_check(self.spectrum(1.0, max(self.N, self.kkms_basis)))

    def run_jensen(self) -> VerdictReport:
        N = VERDICT_DEFAULTS['jensen_basis']
        return jensen_check(N, VERDICT_DEFAULTS['jensen_alphas'], self.L,
                            matrix_for=lambda alpha: self.matrix(alpha, N))

    def run(self, suite: str) -> VerdictReport:
        if suite == 'all':
            report = VerdictReport("all", self.parameters())
            for name in SUITES:
                report.records.append(self.run(name))
            return report
        runner = self._suites.get(suite)
        if runner is None:
            raise InputError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}, all")
        debug_module('verdict', f"running suite {suite}")
        report = runner()
        debug_module('verdict', f"suite {suite}: {report.overall}")
        return report


__all__ = [
    "Verdict", "Tag", "DeficitRecord", "ThresholdResult", "NonexistenceRecord",
    "PropertyOutcome", "VerdictReport", "build_provenance",
    "deficit_record", "polya_check_interval", "polya_check_bounds",
    "liyau_check", "two_sided_check_alpha1", "monotonicity_check", "weyl_ratio_check",
    "kkms_consistency_check", "jensen_check",
    "bisect_threshold", "scan_brackets", "disk_thresholds", "square_thresholds",
    "bk_square_gap", "threshold_check", "SUITES", "check_suite_settings", "SuiteRunner",
]
