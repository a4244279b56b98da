"""
FracPolya - Eigenvalue bounds for the fractional Laplacian

Features:
- Rayleigh-Ritz upper bounds for (-Delta)^(alpha/2) on an interval (sine basis)
- Closed-form upper bounds for lambda_1 on the unit disk and the square
- Polya deficits, Li-Yau sums, monotonicity in alpha and Weyl-ratio suites
- alpha-thresholds where the disk bounds cross the Polya term
- `fracpolya` command line with CSV / JSON output and a stiffness cache

Target: Python 3.9+, numpy
License: Apache-2.0
SPDX-License-Identifier: Apache-2.0
"""

# Import version from single source (metadata.json)
try:
    from .__version__ import __version__
except ImportError:
    __version__ = "0.1.0"  # Fallback

__license__ = "Apache-2.0"

from .core import (DomainSpec, EigenEstimate, EstimateKind, QuadratureSpec, RitzSpectrum,
                   SuiteRunner, VerdictReport, polya_term, ritz_upper_bounds)

__all__ = [
    "__version__",
    "DomainSpec", "EigenEstimate", "EstimateKind", "QuadratureSpec", "RitzSpectrum",
    "SuiteRunner", "VerdictReport", "polya_term", "ritz_upper_bounds",
]
