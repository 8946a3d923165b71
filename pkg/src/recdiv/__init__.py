"""Divisibility n | u_n for linear recurrences: censuses, ranks of
apparition, splitting-field determinants, smooth numbers and explicit
member constructions."""

from recdiv._backend import BACKEND
from recdiv.errors import DomainError
from recdiv.modular import divides_term, period_mod, term_mod
from recdiv.recurrence import RecurrenceSpec, exact_term, validate_spec

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DomainError",
    "RecurrenceSpec",
    "divides_term",
    "exact_term",
    "period_mod",
    "term_mod",
    "validate_spec",
]
