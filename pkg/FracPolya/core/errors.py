"""
FracPolya error hierarchy.

Library code raises these; only the CLI turns them into exit codes.
"""

from __future__ import annotations

from typing import Optional


class FracPolyaError(Exception):
    """Base class for every error raised by FracPolya."""


class DomainError(FracPolyaError, ValueError):
    """An argument lies outside the domain an operation is defined on."""


class InputError(FracPolyaError, ValueError):
    """Malformed input: asymmetric matrix, non-unit vector, coarse grid..."""


class NumericError(FracPolyaError, ArithmeticError):
    """Iteration failed to converge or produced a non-finite value."""


class BracketingError(FracPolyaError):
    """A root search was given an interval without a sign change."""


class ConsistencyError(FracPolyaError):
    """A closed-form identity that must hold does not (transcription bug)."""


class CacheError(FracPolyaError):
    """Stiffness cache file is unreadable or fails its checksum."""


class QuadratureConvergenceError(NumericError):
    """Panel doubling ran out of budget before two estimates agreed."""

    def __init__(self, j: Optional[int], k: Optional[int], last: float, previous: float,
                 doublings: int):
        self.j = j
        self.k = k
        self.last = last
        self.previous = previous
        self.doublings = doublings
        where = f" for entry ({j}, {k})" if j is not None else ""
        super().__init__(
            f"quadrature did not converge{where} after {doublings} doublings: "
            f"last={last!r}, previous={previous!r}"
        )


class OutputError(FracPolyaError, OSError):
    """A report or table could not be written."""
