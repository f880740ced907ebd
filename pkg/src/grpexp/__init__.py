"""Exact computations with group expansions.

Truncated non-commutative power series with their Hopf structure, Magnus and
exponential expansions of free groups, free Lie algebras in the Lyndon basis,
Malcev Lie algebra presentations, lower central series and Chen rank
formulas, and a numerical evaluator for Chen iterated integrals of KZ-type
connections.
"""

from .errors import DomainError, ParseError

__version__ = "0.1.0"

__all__ = ["DomainError", "ParseError", "__version__"]
