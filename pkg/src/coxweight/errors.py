"""Shared exception types."""

from __future__ import annotations


class CoxweightError(Exception):
    """Base class for all package errors."""

    kind = "error"

    def payload(self):
        return {"type": self.kind, "message": str(self)}


class FormatError(CoxweightError):
    kind = "format-error"


class NotSphericalError(CoxweightError):
    kind = "not-spherical"


class InfiniteGroupError(CoxweightError):
    kind = "infinite-group"


class UnsupportedOperationError(CoxweightError):
    kind = "unsupported-operation"


class IntermediateRegionError(CoxweightError):
    """The multiparameter lies outside both closed convergence regions.

    No closed-form Betti formula applies there, so the computation is
    refused instead of guessed.
    """

    kind = "intermediate-region"


class NonInvariantSubspaceError(CoxweightError):
    kind = "non-invariant-subspace"


class BudgetExceededError(CoxweightError):
    """Enumeration ran out of budget; carries the completed partial data."""

    kind = "budget-exceeded"

    def __init__(self, message, completed_lengths, histogram, elements):
        super().__init__(message)
        self.completed_lengths = completed_lengths
        self.histogram = histogram
        self.elements = elements

    def payload(self):
        out = super().payload()
        out["completed_lengths"] = self.completed_lengths
        out["histogram"] = list(self.histogram)
        return out
