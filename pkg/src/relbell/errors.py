"""Exception types shared across the toolkit."""


class BellToolkitError(Exception):
    """Base class for all toolkit errors."""


class DimensionMismatch(BellToolkitError):
    """Operands have incompatible dimensions."""


class NotHermitian(BellToolkitError):
    """A matrix required to be Hermitian is not."""


class NoConvergence(BellToolkitError):
    """The eigensolver exhausted its sweep budget (signals a kernel bug)."""


class DegenerateObservable(BellToolkitError):
    """The boosted-observable normalization denominator underflowed."""


class DomainRestriction(BellToolkitError):
    """Inputs left the restricted domain on which a closed form is valid."""


class DomainError(BellToolkitError):
    """A scalar parameter lies outside its admissible interval."""


class InvalidObservable(BellToolkitError):
    """An observable is not a valid two-outcome (+1/-1) spin measurement."""


class MissingSetting(BellToolkitError):
    """Shot records do not match the operator's setting combinations."""
