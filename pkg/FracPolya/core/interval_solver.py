"""
FracPolya Interval Solver - Rayleigh-Ritz upper bounds on (0, L).

Trial basis: s_k(x) = sqrt(2/L) sin(k pi x / L), zero outside (0, L).
The quadratic form of (-Delta)^(alpha/2) on span{s_1..s_N} is

    A_jk = integral over R of |xi|^alpha Re[hat s_j(xi) conj(hat s_k(xi))] dxi

and its eigenvalues bound lambda_1(alpha) <= ... <= lambda_N(alpha) from above
(the basis is orthonormal, so the mass matrix is the identity).

Everything is integrated in the scaled frequency t = xi L / pi, where

    A_jk = (pi/L)^alpha (8 / pi^2) int_0^inf t^alpha G_jk(t) dt,
    G_jk = (-1)^((j-k)/2) phi_j(t) phi_k(t),  phi_k = sin(pi (t-k)/2) / (k^2 - t^2)

for j, k of equal parity (A_jk = 0 otherwise). Each phi_k is finite at t = k,
so the removable singularities never need cancelling. Panels are the unit
intervals [i, i+1] (multiples of pi/L in xi), the first one graded toward
t = 0 for the t^alpha corner; beyond the cutoff T the integral is evaluated
from the expansion of 1/((t^2-j^2)(t^2-k^2)) in powers of 1/t.

Usage:
    from .interval_solver import QuadratureSpec, ritz_upper_bounds

    spectrum = ritz_upper_bounds(256, 1.0, 2.0, QuadratureSpec())
    spectrum.value(1)        # upper bound for lambda_1(1) on (0, 2)
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .bounds import EigenEstimate, EstimateKind, check_alpha
from .defaultsConfig import QUADRATURE_DEFAULTS, SOLVER_DEFAULTS, debug_module
from .errors import DomainError, InputError, NumericError, QuadratureConvergenceError
from .specfun import DomainSpec


@dataclass(frozen=True)
class QuadratureSpec:
    panel_nodes: int = QUADRATURE_DEFAULTS['panel_nodes']
    abs_tol: float = QUADRATURE_DEFAULTS['abs_tol']
    truncation_policy: float = QUADRATURE_DEFAULTS['truncation_policy']
    max_doublings: int = QUADRATURE_DEFAULTS['max_doublings']

    def __post_init__(self):
        if isinstance(self.panel_nodes, bool) or int(self.panel_nodes) != self.panel_nodes \
                or self.panel_nodes < 8:
            raise DomainError(f"panel_nodes must be an integer >= 8, got {self.panel_nodes!r}")
        if not (self.abs_tol > 0.0 and math.isfinite(self.abs_tol)):
            raise DomainError(f"abs_tol must be positive, got {self.abs_tol!r}")
        if not (0.0 < self.truncation_policy < 1.0):
            raise DomainError(
                f"truncation_policy must lie in (0, 1), got {self.truncation_policy!r}")
        if self.max_doublings < 1:
            raise DomainError(f"max_doublings must be >= 1, got {self.max_doublings!r}")


@dataclass(frozen=True, eq=False)
class StiffnessMatrix:
    N: int
    alpha: float
    L: float
    quad: QuadratureSpec
    entries: np.ndarray = field(repr=False)

    def parity_blocks(self) -> Tuple[np.ndarray, np.ndarray]:
        return parity_blocks(self.entries)


@dataclass(frozen=True, eq=False)
class RitzSpectrum:
    alpha: float
    L: float
    N: int
    quad: QuadratureSpec
    values: np.ndarray = field(repr=False)

    @property
    def trusted_count(self) -> int:
        """Ritz values beyond N/4 are too inflated to use."""
        return self.N // 4

    def value(self, n: int) -> float:
        """lambda_hat_n, 1-indexed."""
        if not 1 <= n <= self.N:
            raise DomainError(f"n must lie in 1..{self.N}, got {n!r}")
        return float(self.values[n - 1])

    def estimate(self, n: int) -> EigenEstimate:
        return EigenEstimate(n, self.alpha, DomainSpec.interval(self.L), self.value(n),
                             EstimateKind.RITZ_UPPER)

    def partial_sums(self) -> np.ndarray:
        return np.cumsum(self.values)


# ============================================================
# NODES
# ============================================================

@dataclass(frozen=True, eq=False)
class _NodeSet:
    base: np.ndarray      # integer part of t
    frac: np.ndarray      # t - base, in [0, 1)
    weight: np.ndarray

    @property
    def t(self) -> np.ndarray:
        return self.base + self.frac

    def __len__(self) -> int:
        return len(self.frac)

    def chunk(self, sl: slice) -> "_NodeSet":
        return _NodeSet(self.base[sl], self.frac[sl], self.weight[sl])


def _grading_levels(exponent: float, abs_tol: float) -> int:
    """Dyadic levels in [0, 1]; the innermost panel carries ~ 2^-(levels (1 + exponent))."""
    return max(8, int(math.ceil(math.log2(1.0 / abs_tol) / (1.0 + exponent))) + 4)


def _node_set(cutoff: int, panel_nodes: int, subdivisions: int, levels: int) -> _NodeSet:
    x, w = np.polynomial.legendre.leggauss(panel_nodes)
    s = subdivisions
    u = ((np.arange(s)[:, None] + 0.5 * (x[None, :] + 1.0)) / s).ravel()
    wu = np.tile(0.5 * w / s, s)

    # [0, 1]: 0 < 2^-levels < ... < 1/2 < 1
    edges = np.concatenate(([0.0], 2.0 ** -np.arange(levels, -1, -1, dtype=float)))
    a, b = edges[:-1], edges[1:]
    g_frac = (a[:, None] + (b - a)[:, None] * u[None, :]).ravel()
    g_weight = ((b - a)[:, None] * wu[None, :]).ravel()

    panels = np.arange(1, cutoff, dtype=np.int64)
    base = np.concatenate((np.zeros(g_frac.size, dtype=np.int64), np.repeat(panels, u.size)))
    frac = np.concatenate((g_frac, np.tile(u, panels.size)))
    weight = np.concatenate((g_weight, np.tile(wu, panels.size)))
    return _NodeSet(base, frac, weight)


# ============================================================
# INTEGRAND
# ============================================================

def _sin_ratio(delta: np.ndarray, sine: np.ndarray) -> np.ndarray:
    """sin(pi delta / 2) / delta, switching to the series near delta = 0."""
    switch = QUADRATURE_DEFAULTS['series_switch']
    near = np.abs(delta) < switch
    with np.errstate(divide='ignore', invalid='ignore'):
        out = sine / delta
    if np.any(near):
        x2 = (0.5 * np.pi * delta[near]) ** 2
        # sin(x)/x, 6 terms
        series = 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (
            1.0 - x2 / 72.0 * (1.0 - x2 / 110.0))))
        out[near] = 0.5 * np.pi * series
    return out


def _parity_signs(ks: np.ndarray) -> np.ndarray:
    """(-1)^((k - k0)/2), k0 the smallest index of the same parity."""
    ref = np.where(ks % 2 == 1, 1, 2)
    return np.where(((ks - ref) // 2) % 2 == 0, 1.0, -1.0)


def _basis_columns(nodes: _NodeSet, ks: np.ndarray) -> np.ndarray:
    """psi_k(t) = -sign_k k sin(pi (t-k)/2) / ((t-k)(k+t)), one column per k."""
    offset = nodes.base[:, None] - ks[None, :]
    delta = offset + nodes.frac[:, None]
    half = 0.5 * np.pi * nodes.frac
    sh, ch = np.sin(half), np.cos(half)
    # sin(pi (n + u) / 2) by n mod 4
    table = np.stack((sh, ch, -sh, -ch), axis=1)
    sine = np.take_along_axis(table, offset % 4, axis=1)
    ratio = _sin_ratio(delta, sine)
    denom = (nodes.base[:, None] + ks[None, :]) + nodes.frac[:, None]
    return -(_parity_signs(ks) * ks)[None, :] * ratio / denom


def _tail(js: np.ndarray, ks: np.ndarray, exponent: float, cutoff: int,
          odd: bool) -> Tuple[np.ndarray, np.ndarray]:
    """
    jk * int_T^inf t^a w(t) / ((t^2-j^2)(t^2-k^2)) dt and an error estimate.

    w = (1 + cos pi t)/2 for odd indices, (1 - cos pi t)/2 for even ones.
    With x = j^2/T^2, y = k^2/T^2 and H_m the complete homogeneous polynomial,
    the rational factor is t^-4 sum_m H_m (T/t)^(2m); for even T

        int_T^inf t^b cos(pi t) dt = T^(b+1) sum_p (-1)^(p+1) b(b-1)..(b-2p) / (pi T)^(2p+2).
    """
    terms = QUADRATURE_DEFAULTS['tail_terms']
    osc_terms = QUADRATURE_DEFAULTS['osc_terms']
    sign = 1.0 if odd else -1.0
    x = (js.astype(float) / cutoff) ** 2
    y = (ks.astype(float) / cutoff) ** 2
    piT2 = (math.pi * cutoff) ** 2

    h = np.ones((js.size, ks.size))
    xm = np.ones(js.size)
    acc = np.zeros_like(h)
    err = np.zeros_like(h)
    coeff = 0.0
    for m in range(terms):
        beta = exponent - 4.0 - 2.0 * m
        falling, scale, osc = beta, piT2, 0.0
        for p in range(osc_terms):
            osc += (-1.0) ** (p + 1) * falling / scale
            falling *= (beta - 2 * p - 1) * (beta - 2 * p - 2)
            scale *= piT2
        coeff = 1.0 / (3.0 + 2.0 * m - exponent) + sign * osc
        acc += coeff * h
        err += h * abs(falling / scale)
        xm = xm * x
        h = y[None, :] * h + xm[:, None]
    ratio = float(max(x.max(), y.max()))
    err += h * (abs(coeff) + 1.0) / (1.0 - ratio)

    factor = 0.5 * cutoff ** (exponent - 3.0) * np.outer(js, ks).astype(float)
    return factor * acc, factor * err


def _form_scale(exponent: float, L: float) -> float:
    return (math.pi / L) ** exponent * 8.0 / math.pi ** 2


def _cutoff(kmax: int, exponent: float, L: float, quad: QuadratureSpec, js: np.ndarray,
            ks: np.ndarray, odd: bool) -> Tuple[int, np.ndarray]:
    """Smallest even T >= max(64, 2 kmax + 2) whose tail error is within budget."""
    cutoff = max(QUADRATURE_DEFAULTS['min_cutoff'], 2 * kmax + 2)
    cutoff += cutoff % 2
    budget = quad.abs_tol * quad.truncation_policy
    scale = _form_scale(exponent, L)
    for _ in range(30):
        tail, err = _tail(js, ks, exponent, cutoff, odd)
        if scale * float(err.max()) <= budget:
            return cutoff, scale * tail
        cutoff *= 2
    raise NumericError(f"tail truncation error stays above {budget!r}")


def _check_index(name: str, value: int) -> int:
    if isinstance(value, bool) or int(value) != value or value < 1:
        raise DomainError(f"{name} must be a positive integer, got {value!r}")
    return int(value)


def _check_length(L: float) -> float:
    L = float(L)
    if not (L > 0.0 and math.isfinite(L)):
        raise DomainError(f"interval length must be positive, got {L!r}")
    return L


# ============================================================
# PUBLIC OPERATIONS
# ============================================================

def sine_ft_product(j: int, k: int, L: float, xi):
    """Re[hat s_j(xi) conj(hat s_k(xi))], even in xi, finite at xi = k pi / L."""
    j = _check_index("j", j)
    k = _check_index("k", k)
    L = _check_length(L)
    xi_arr = np.asarray(xi, dtype=float)
    if (j + k) % 2:
        out = np.zeros_like(xi_arr)
    else:
        t = np.abs(xi_arr).ravel() * L / math.pi
        base = np.floor(t).astype(np.int64)
        nodes = _NodeSet(base, t - base, np.ones_like(t))
        cols = _basis_columns(nodes, np.array([j, k], dtype=np.int64))
        out = (4.0 * L / math.pi ** 3 * cols[:, 0] * cols[:, 1]).reshape(xi_arr.shape)
    return float(out) if out.ndim == 0 else out


def quadratic_form_integral(j: int, k: int, exponent: float, L: float,
                            quad: Optional[QuadratureSpec] = None) -> float:
    """int_R |xi|^exponent Re[hat s_j conj(hat s_k)] dxi for exponent in [0, 2]."""
    quad = quad or QuadratureSpec()
    j = _check_index("j", j)
    k = _check_index("k", k)
    L = _check_length(L)
    exponent = check_alpha(exponent, allow_zero=True)
    if (j + k) % 2:
        return 0.0

    ks = np.array([j, k], dtype=np.int64)
    odd = j % 2 == 1
    cutoff, tail = _cutoff(max(j, k), exponent, L, quad, ks[:1], ks[1:], odd)
    scale = _form_scale(exponent, L)
    levels = _grading_levels(exponent, quad.abs_tol)

    previous = older = None
    for doubling in range(quad.max_doublings + 1):
        nodes = _node_set(cutoff, quad.panel_nodes, 2 ** doubling, levels)
        cols = _basis_columns(nodes, ks)
        wt = nodes.weight * nodes.t ** exponent
        value = scale * float(np.dot(wt, cols[:, 0] * cols[:, 1])) + float(tail[0, 0])
        if previous is not None:
            size = scale * math.sqrt(float(np.dot(wt, cols[:, 0] ** 2))
                                     * float(np.dot(wt, cols[:, 1] ** 2)))
            tol = 0.5 * quad.abs_tol + QUADRATURE_DEFAULTS['rel_floor'] * size
            if abs(value - previous) <= tol:
                debug_module('quad', f"entry ({j},{k}) T={cutoff} s={2 ** doubling}: {value!r}")
                return value
        older, previous = previous, value
    raise QuadratureConvergenceError(j, k, previous, older, quad.max_doublings)


def stiffness_entry(j: int, k: int, alpha: float, L: float,
                    quad: Optional[QuadratureSpec] = None) -> float:
    """A_jk to absolute accuracy quad.abs_tol."""
    alpha = check_alpha(alpha)
    return quadratic_form_integral(j, k, alpha, L, quad)


def _gram(nodes: _NodeSet, ks: np.ndarray, exponent: float, workers: int) -> np.ndarray:
    """sum_q w_q t_q^a psi_j(t_q) psi_k(t_q), chunked and summed in chunk order."""
    step = QUADRATURE_DEFAULTS['chunk_nodes']
    slices = [slice(i, i + step) for i in range(0, len(nodes), step)]

    def work(sl: slice) -> np.ndarray:
        part = nodes.chunk(sl)
        cols = _basis_columns(part, ks)
        wt = part.weight * part.t ** exponent
        return cols.T @ (wt[:, None] * cols)

    total = np.zeros((ks.size, ks.size))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts: List[np.ndarray] = list(pool.map(work, slices))
    else:
        parts = [work(sl) for sl in slices]
    for part in parts:
        total += part
    return total


def _assemble_block(ks: np.ndarray, alpha: float, L: float, quad: QuadratureSpec,
                    workers: int) -> np.ndarray:
    odd = int(ks[0]) % 2 == 1
    cutoff, tail = _cutoff(int(ks.max()), alpha, L, quad, ks, ks, odd)
    scale = _form_scale(alpha, L)
    levels = _grading_levels(alpha, quad.abs_tol)

    previous = older = excess = None
    for doubling in range(quad.max_doublings + 1):
        nodes = _node_set(cutoff, quad.panel_nodes, 2 ** doubling, levels)
        block = scale * _gram(nodes, ks, alpha, workers) + tail
        block = np.tril(block) + np.tril(block, -1).T
        if previous is not None:
            diag = np.abs(np.diag(block))
            tol = 0.5 * quad.abs_tol + QUADRATURE_DEFAULTS['rel_floor'] * np.sqrt(
                np.outer(diag, diag))
            excess = np.abs(block - previous) - tol
            if float(excess.max()) <= 0.0:
                debug_module('solver', f"{'odd' if odd else 'even'} block of {ks.size}: "
                                       f"T={cutoff}, subdivisions={2 ** doubling}")
                return block
        older, previous = previous, block
    worst = np.unravel_index(int(np.argmax(excess)), excess.shape)
    raise QuadratureConvergenceError(int(ks[worst[0]]), int(ks[worst[1]]),
                                     float(previous[worst]), float(older[worst]),
                                     quad.max_doublings)


def assemble_stiffness(N: int, alpha: float, L: float,
                       quad: Optional[QuadratureSpec] = None,
                       workers: int = SOLVER_DEFAULTS['workers']) -> StiffnessMatrix:
    """Symmetric N x N stiffness matrix; opposite-parity entries are exactly 0."""
    quad = quad or QuadratureSpec()
    N = _check_index("N", N)
    alpha = check_alpha(alpha)
    L = _check_length(L)
    entries = np.zeros((N, N))
    for first in (1, 2):
        ks = np.arange(first, N + 1, 2, dtype=np.int64)
        if ks.size == 0:
            continue
        idx = ks - 1
        entries[np.ix_(idx, idx)] = _assemble_block(ks, alpha, L, quad, max(1, int(workers)))
    debug_module('solver', f"assembled N={N}, alpha={alpha!r}, L={L!r}")
    return StiffnessMatrix(N, alpha, L, quad, entries)


def parity_blocks(M: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """(odd-k block, even-k block) of a matrix indexed by k = 1..N."""
    M = np.asarray(M, dtype=float)
    return M[0::2, 0::2], M[1::2, 1::2]


def _jacobi_eigenvalues(A: np.ndarray) -> np.ndarray:
    """Cyclic Jacobi rotations until the off-diagonal norm is <= tol * ||A||."""
    A = np.array(A, dtype=float)
    n = A.shape[0]
    norm = float(np.linalg.norm(A))
    if norm == 0.0:
        return np.zeros(n)
    tol = SOLVER_DEFAULTS['jacobi_tol'] * norm
    for sweep in range(SOLVER_DEFAULTS['jacobi_max_sweeps']):
        off = float(np.linalg.norm(A - np.diag(np.diag(A))))
        if off <= tol:
            debug_module('eigen', f"jacobi n={n} converged after {sweep} sweeps")
            return np.diag(A).copy()
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                app, aqq = A[p, p], A[q, q]
                col_p = A[:, p].copy()
                col_q = A[:, q].copy()
                A[:, p] = c * col_p - s * col_q
                A[:, q] = s * col_p + c * col_q
                A[p, :] = A[:, p]
                A[q, :] = A[:, q]
                A[p, p] = app - t * apq
                A[q, q] = aqq + t * apq
                A[p, q] = A[q, p] = 0.0
    raise NumericError(
        f"Jacobi iteration did not converge in {SOLVER_DEFAULTS['jacobi_max_sweeps']} sweeps")


def symmetric_eigenvalues(M) -> np.ndarray:
    """All eigenvalues in ascending order; Jacobi for small blocks, LAPACK beyond."""
    A = np.asarray(M, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise InputError(f"expected a square matrix, got shape {A.shape}")
    n = A.shape[0]
    if n == 0:
        return np.zeros(0)
    size = float(np.max(np.abs(A)))
    if float(np.max(np.abs(A - A.T))) > SOLVER_DEFAULTS['symmetry_tol'] * size:
        raise InputError("matrix is not symmetric")
    if n <= SOLVER_DEFAULTS['jacobi_max']:
        values = np.sort(_jacobi_eigenvalues(A))
    else:
        values = np.linalg.eigvalsh(0.5 * (A + A.T))
    if not np.all(np.isfinite(values)):
        raise NumericError("non-finite eigenvalue")
    trace = float(np.trace(A))
    ref = max(abs(trace), float(np.linalg.norm(A)))
    if abs(float(values.sum()) - trace) > SOLVER_DEFAULTS['trace_tol'] * ref:
        raise NumericError(f"eigenvalue sum {values.sum()!r} does not match trace {trace!r}")
    return values


def load_or_assemble(N: int, alpha: float, L: float, quad: Optional[QuadratureSpec] = None,
                     cache=None, workers: int = SOLVER_DEFAULTS['workers']) -> StiffnessMatrix:
    """Stiffness matrix from the cache when present, assembled (and stored) otherwise."""
    quad = quad or QuadratureSpec()
    if cache is not None:
        cached = cache.load(N, alpha, L, quad)
        if cached is not None:
            return cached
    matrix = assemble_stiffness(N, alpha, L, quad, workers)
    if cache is not None:
        cache.save(matrix)
    return matrix


def ritz_upper_bounds(N: int, alpha: float, L: float, quad: Optional[QuadratureSpec] = None,
                      cache=None, workers: int = SOLVER_DEFAULTS['workers']) -> RitzSpectrum:
    """Ritz values of span{s_1..s_N}; each bounds lambda_n(alpha) from above."""
    quad = quad or QuadratureSpec()
    matrix = load_or_assemble(N, alpha, L, quad, cache, workers)
    odd, even = matrix.parity_blocks()
    values = np.sort(np.concatenate((symmetric_eigenvalues(odd), symmetric_eigenvalues(even))))
    debug_module('solver', f"ritz N={N} alpha={alpha!r} L={L!r}: lambda_1={values[0]!r}")
    return RitzSpectrum(matrix.alpha, matrix.L, matrix.N, quad, values)


def form_value(c: Sequence[float], M) -> float:
    """c^T M c for a unit coefficient vector c."""
    entries = M.entries if isinstance(M, StiffnessMatrix) else np.asarray(M, dtype=float)
    vec = np.asarray(c, dtype=float)
    if vec.ndim != 1 or vec.size != entries.shape[0]:
        raise InputError(f"coefficient vector of length {vec.size} for a "
                         f"{entries.shape[0]}x{entries.shape[0]} matrix")
    if abs(float(np.linalg.norm(vec)) - 1.0) > SOLVER_DEFAULTS['unit_tol']:
        raise InputError("coefficient vector must have unit length")
    return float(vec @ entries @ vec)


__all__ = [
    "QuadratureSpec", "StiffnessMatrix", "RitzSpectrum",
    "sine_ft_product", "quadratic_form_integral", "stiffness_entry", "assemble_stiffness",
    "parity_blocks", "symmetric_eigenvalues", "load_or_assemble", "ritz_upper_bounds",
    "form_value",
]
