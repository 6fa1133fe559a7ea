"""Exception types shared across the package."""

from __future__ import annotations


class SexticStrataError(Exception):
    """Base class for all package errors."""


class FieldMismatchError(SexticStrataError):
    """Operands live over different base fields."""


class InvalidPresentationError(SexticStrataError):
    """Presentation fails the degree-grid contract."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations) or "invalid presentation")


class NotSquareError(SexticStrataError):
    """Cohomology requested for a rectangular presentation."""


class NotInjectiveError(SexticStrataError):
    """The presentation matrix has vanishing determinant."""


class ProfileNotInTable(SexticStrataError):
    """Cohomological profile matches no stratum row.

    Signals that the cokernel is not a semistable sheaf with the expected
    invariants, or an arithmetic bug upstream.  Carries the offending
    profile as a 4-tuple (h0(F(-1)), h1(F), h0(F otimes Omega^1(1)), h1(F(1))).
    """

    def __init__(self, profile):
        self.profile = tuple(profile)
        super().__init__(f"profile {self.profile} matches no stratum row")


class WrongShapeError(SexticStrataError):
    """Operation applied to a presentation with the wrong twist shape."""


class AmbiguousCaseError(SexticStrataError):
    """Normal-form dispatch cannot decide which case applies."""


class MembershipFailure(SexticStrataError):
    """A form does not lie in the required ideal slice."""


class DivisibilityFailure(SexticStrataError):
    """A linear form divides (or fails to divide) where the contract forbids it."""


class RejectionBudgetExceeded(SexticStrataError):
    """Rejection sampling exhausted its budget.

    Carries the reject count and the violations of the last rejected draw.
    """

    def __init__(self, rejects: int, last_violations):
        self.rejects = rejects
        self.last_violations = list(last_violations)
        super().__init__(
            f"rejection budget exhausted after {rejects} rejects; "
            f"last violations: {self.last_violations}"
        )


class BudgetExceededError(SexticStrataError):
    """Exact enumeration would exceed the configured work budget."""
