"""Exception types shared across the package."""


class MetallicError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(MetallicError):
    """Invalid user-supplied parameters (bad counts, indices, ranges)."""


class ParamsMismatch(ValidationError):
    """Two field elements built over different (p, q) were combined."""


class InvalidRemovalCount(ValidationError):
    """Removal counts exceed the available tiles or leave nothing behind."""


class PolicyIndexMismatch(ValidationError):
    """Explicit removal indices do not name the declared tile kinds."""


class EmptyFractal(ValidationError):
    """A removal pattern that leaves no surviving tile."""


class CapExceeded(MetallicError):
    """A materialization would exceed the enumeration cap."""
