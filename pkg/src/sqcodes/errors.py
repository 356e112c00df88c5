"""Exception and warning types shared across the package."""

from __future__ import annotations

__all__ = [
    "SqcodesError",
    "ExactCapExceeded",
    "ReducibleModulus",
    "OrderCapExceeded",
    "NoAdmissibleIota",
    "DegenerateSolutionCount",
    "NoSymmetricSubset",
    "TncViolation",
    "NonSymmetricSet",
    "IdentityInSet",
    "NoConvergence",
    "DivisibilityError",
    "BudgetExceeded",
    "SizeCapExceeded",
    "LengthMismatch",
    "TensorDimCapExceeded",
    "DuplicateImages",
    "NonGeneratingSet",
]


class SqcodesError(Exception):
    """Base class for all errors raised by this package."""


class ExactCapExceeded(SqcodesError):
    """Exact distance enumeration requested above the configured dimension cap."""


class ReducibleModulus(SqcodesError):
    """A user-supplied field modulus polynomial is not irreducible."""


class OrderCapExceeded(SqcodesError):
    """A group construction would exceed the configured order cap."""


class NoAdmissibleIota(SqcodesError):
    """No field element found outside the base subfield with trace-like square in it."""


class DegenerateSolutionCount(SqcodesError):
    """The conic over the base subfield did not have the expected number of solutions."""


class NoSymmetricSubset(SqcodesError):
    """No inverse-closed subset of the requested size exists."""


class TncViolation(SqcodesError):
    """The no-conjugacy condition between the two generator sets fails."""


class NonSymmetricSet(SqcodesError):
    """A generator set is not closed under inverses."""


class IdentityInSet(SqcodesError):
    """A generator set contains the group identity."""


class NoConvergence(SqcodesError):
    """An iterative eigensolve failed to converge within its matvec budget."""


class DivisibilityError(SqcodesError):
    """Degree constraints of a biregular factor graph are unsatisfiable."""


class BudgetExceeded(SqcodesError):
    """An exhaustive sweep would exceed its configured enumeration budget."""


class SizeCapExceeded(SqcodesError):
    """An exhaustive testability oracle was asked for an instance above its cap."""


class LengthMismatch(SqcodesError):
    """Base code lengths do not match the generator set sizes they constrain."""


class TensorDimCapExceeded(SqcodesError):
    """Exhaustive tensor codebook search requested above the dimension cap."""


class DuplicateImages(UserWarning):
    """Products forming a derived generator set collided; the set was deduplicated."""


class NonGeneratingSet(UserWarning):
    """A generator set does not generate the whole group; expansion claims may not apply."""
