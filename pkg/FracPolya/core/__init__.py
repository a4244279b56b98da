# FracPolya - Core Package
from .specfun import DomainSpec, polya_term
from .bounds import EigenEstimate, EstimateKind
from .interval_solver import QuadratureSpec, RitzSpectrum, ritz_upper_bounds
from .verdicts import SuiteRunner, VerdictReport

__all__ = [
    'DomainSpec', 'polya_term', 'EigenEstimate', 'EstimateKind',
    'QuadratureSpec', 'RitzSpectrum', 'ritz_upper_bounds', 'SuiteRunner', 'VerdictReport',
]
