"""
FracPolya Defaults Configuration - Single Source of Truth
==========================================================
ALL default values for FracPolya are defined here.
DO NOT hardcode defaults in other files - import from this module.

Usage:
    from .defaultsConfig import QUADRATURE_DEFAULTS, SOLVER_DEFAULTS

    abs_tol = QUADRATURE_DEFAULTS['abs_tol']
    basis = SOLVER_DEFAULTS['basis']

License: Apache-2.0
SPDX-License-Identifier: Apache-2.0
"""

import logging
from decimal import Decimal
from typing import Dict, Iterable, Optional

# ============================================================
# QUADRATURE DEFAULTS - Stiffness entry integration
# ============================================================
QUADRATURE_DEFAULTS = {
    'panel_nodes': 16,            # Gauss-Legendre points per unit panel (>= 8)
    'abs_tol': 1e-10,             # target absolute error per matrix entry
    'truncation_policy': 0.5,     # fraction of abs_tol allotted to the tail
    'max_doublings': 20,          # panel subdivision budget
    'rel_floor': 1e-13,           # rounding floor, relative to sqrt(A_jj A_kk)
    'series_switch': 1e-4,        # |t - k| below this uses the sin(x)/x series
    'min_cutoff': 64,             # smallest tail cutoff T (scaled frequency)
    'tail_terms': 60,             # terms of the 1/((t^2-j^2)(t^2-k^2)) expansion
    'osc_terms': 10,              # terms of the oscillatory tail expansion
    'chunk_nodes': 8192,          # nodes per assembly chunk
}

# ============================================================
# SOLVER DEFAULTS - Rayleigh-Ritz on the interval
# ============================================================
SOLVER_DEFAULTS = {
    'basis': 256,                 # trial space dimension N
    'length': 2.0,                # interval length L
    'workers': 1,                 # assembly threads
    'jacobi_max': 64,             # blocks up to this size use cyclic Jacobi
    'jacobi_max_sweeps': 100,
    'jacobi_tol': 1e-12,          # off-diagonal norm relative to ||M||
    'symmetry_tol': 1e-12,
    'trace_tol': 1e-10,
    'unit_tol': 1e-12,            # form_value coefficient normalisation
}

# ============================================================
# VERDICT DEFAULTS - Verification suites
# ============================================================
VERDICT_DEFAULTS = {
    'margin': 1e-6,               # deficit margin for verdicts
    'trusted_fraction': 4,        # trust Ritz values n <= N / 4
    'scan_step': 0.01,            # coarse bracketing scan before bisection
    'threshold_tol': 1e-6,
    'threshold_agreement': 1e-3,  # published figures are given to 3 decimals
    'threshold_stability': 2e-4,
    'bisect_max_iter': 200,
    'discriminant_tol': 1e-10,    # Dyda discriminant, relative to P^2
    'nonexistence_step': 0.001,   # square bk grid
    'monotone_tol_rel': 1e-3,
    'monotone_nmax': 8,
    'monotone_grid': (0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0),
    'terminal_tol': 1e-6,
    'suite_alphas': (0.5, 1.0, 1.5),
    'kkms_basis': 1024,
    'kkms_headroom': 0.05,
    'weyl_window': (8, 64),
    'weyl_margin': 5e-3,
    'weyl_slope_tol': 0.05,
    'weyl_exact_tol': 1e-8,
    'jensen_basis': 32,
    'jensen_vectors': 100,
    'jensen_seed': 20160421,
    'jensen_alphas': (0.5, 1.0, 1.5, 2.0),
    'jensen_margin': 1e-8,
    'bounds_grid': (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0,
                    1.1, 1.2, 1.3, 1.4, 1.5, 1.6, 1.7, 1.8, 1.9),
    'linear_nmax': 20,
}

# ============================================================
# CLI / REPORT DEFAULTS
# ============================================================
CLI_DEFAULTS = {
    'format': 'plain',            # plain | csv | json
    'significant_digits': 12,
    'schema_version': 1,
    'cache_env_var': 'FRACPOLYA_CACHE_DIR',
    'cache_dir': '~/.fracpolya/cache',
    'settings_dir': '~/.fracpolya',
    'settings_file': 'settings.conf',
    'disk_grid': '0.01:2.0:0.01',
    'report_alphas': (0.5, 1.0, 1.5),
    'report_dir': 'fracpolya_report',
}

# ============================================================
# PUBLISHED CONSTANTS
# ============================================================
# Crossing points quoted to three decimals.
PUBLISHED_THRESHOLDS = {
    'disk': {'bk': 0.699, 'dkk': 0.802, 'dyda': 0.984},
    'square': {'dkk': 0.298, 'dyda': 0.417},
}

# lambda_n(1) on (0, 2); 12-digit values rounded up to 2 decimals.
KKMS_TABLE = {
    1: Decimal('1.16'),
    2: Decimal('2.76'),
    3: Decimal('4.32'),
}
KKMS_ROUNDING = Decimal('0.01')

# ============================================================
# DEBUG SETTINGS - Logging control
# ============================================================
DEBUG_ENABLED = False  # Master debug flag

# Per-module switches, consulted only when DEBUG_ENABLED is True
DEBUG_MODULES = {
    'quad': False,       # stiffness quadrature
    'solver': True,      # assembly / Ritz spectra
    'eigen': False,      # Jacobi sweeps
    'cache': True,       # stiffness cache
    'verdict': True,     # suites
    'cli': True,
    'report': True,
    'settings': True,
}

_LOGGER_ROOT = 'fracpolya'


def set_debug(enabled: bool, modules: Optional[Iterable[str]] = None) -> None:
    """Toggle debug output; `modules` restricts it to the named categories."""
    global DEBUG_ENABLED
    DEBUG_ENABLED = bool(enabled)
    if modules is not None:
        wanted = set(modules)
        for key in DEBUG_MODULES:
            DEBUG_MODULES[key] = key in wanted
    level = logging.DEBUG if DEBUG_ENABLED else logging.WARNING
    logging.getLogger(_LOGGER_ROOT).setLevel(level)


def debug_module(module: str, msg: str) -> None:
    """
    Log a debug message only if the module is enabled.

    Usage:
        debug_module('cache', f"Loaded: {path}")
    """
    if DEBUG_ENABLED and DEBUG_MODULES.get(module, False):
        logging.getLogger(f"{_LOGGER_ROOT}.{module}").debug(msg)


def warn_module(module: str, msg: str) -> None:
    """Warnings are always emitted, regardless of the debug switches."""
    logging.getLogger(f"{_LOGGER_ROOT}.{module}").warning(msg)


# ============================================================
# HELPER FUNCTIONS
# ============================================================

def get_quadrature_defaults() -> Dict:
    return dict(QUADRATURE_DEFAULTS)


def get_solver_defaults() -> Dict:
    return dict(SOLVER_DEFAULTS)


def get_verdict_defaults() -> Dict:
    return dict(VERDICT_DEFAULTS)


def get_cli_defaults() -> Dict:
    return dict(CLI_DEFAULTS)
