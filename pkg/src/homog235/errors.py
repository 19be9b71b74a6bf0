"""
Exception hierarchy for homog235.

Everything raised on purpose by the package derives from Homog235Error and
from the closest built-in, so ``except ValueError`` keeps working for callers
that do not care about the finer classes.  Axiom and verification failures
are *not* exceptions: they come back as report objects with ``.ok``.
"""

from __future__ import annotations


class Homog235Error(Exception):
    """Base class for all deliberate homog235 failures."""


class ParseError(Homog235Error, ValueError):
    """Malformed scalar, expression, corpus line or model document."""

    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at offset {offset})"
        super().__init__(message)


class FieldError(Homog235Error, ArithmeticError):
    """Arithmetic outside the supported exact fields."""


class MixedRadicalError(FieldError):
    """Two different quadratic radicals met in one computation."""


class DimensionError(Homog235Error, ValueError):
    """Vectors, matrices or subspaces of incompatible sizes."""


class SplitError(Homog235Error, ArithmeticError):
    """A semisimple algebra could not be split into its two simple ideals."""


class FieldTooSmallError(SplitError):
    """The centroid's minimal polynomial has no roots in the current field."""


class CentroidDimensionError(SplitError):
    """The centroid is not two-dimensional."""


class ModelError(Homog235Error, ValueError):
    """An algebraic model or anti-involution is unusable for the request."""


class SingularMapError(ModelError):
    """A proposed isomorphism is not invertible."""


class ClassificationError(Homog235Error, ValueError):
    """The input falls outside every branch of the identification algorithm."""


class CatalogError(Homog235Error, ValueError):
    """Unknown label or inconsistent catalog data."""


class ParameterError(CatalogError):
    """A catalog parameter lies in an excluded or flat range."""


class MongeError(Homog235Error, ValueError):
    """Failures of the vector-field and sampling layer."""


class DomainViolation(MongeError):
    """An expression was evaluated outside its real domain."""
