"""Finite categories, well-foundedness, and desk-scale ind-objects."""
from .category import CategoryDescription, FinCategory, check_laws, from_table, validate_category
from .errors import CategoryValidationError, SizeLimitExceeded
from .functor import Decision, Functor, NatTransformation

__all__ = [
    "CategoryDescription",
    "CategoryValidationError",
    "Decision",
    "FinCategory",
    "Functor",
    "NatTransformation",
    "SizeLimitExceeded",
    "check_laws",
    "from_table",
    "validate_category",
]
