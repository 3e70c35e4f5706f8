"""Domain errors carrying a machine-readable code and context payload."""

from __future__ import annotations


class ToricError(Exception):
    code = "toric-error"

    def __init__(self, message, **context):
        super().__init__(message)
        self.message = message
        self.context = context

    def as_json(self):
        return {"code": self.code, "message": self.message, "context": self.context}


class NotFullDimensionalError(ToricError):
    """Raised by hull(); carries the affine span so callers may restrict and retry."""

    code = "not-full-dimensional"


class PolarUndefinedError(ToricError):
    code = "polar-undefined"


class NotReflexiveError(ToricError):
    code = "not-reflexive"


class IncompatibleMorphismError(ToricError):
    code = "incompatible-fan-morphism"


class SupportError(ToricError):
    code = "support-mismatch"


class NoMonomialFormError(ToricError):
    code = "no-monomial-form"


class NotNefPartitionError(ToricError):
    code = "not-a-nef-partition"


class DegenerateInputError(ToricError):
    code = "degenerate-input"
