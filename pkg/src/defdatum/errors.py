"""Exception hierarchy shared by every module of the package."""


class DefdatumError(Exception):
    """Base class for domain errors (CLI exit code 1)."""

    reason = "domain_error"


class FieldError(DefdatumError, ValueError):
    reason = "invalid_field"


class MixedFieldError(FieldError):
    reason = "mixed_field"


class ExtendFieldError(DefdatumError):
    """Some required point is not rational over the working field."""

    reason = "extend_field"


class NotLogarithmicError(DefdatumError):
    reason = "not_logarithmic"


class NotEquivariantError(DefdatumError):
    reason = "not_equivariant"


class InconsistencyError(DefdatumError, AssertionError):
    """A cross-check that holds for every valid input failed; always a bug."""

    reason = "internal_inconsistency"


class InvalidTypeError(DefdatumError, ValueError):
    reason = "invalid_type"


class NotRealizableError(DefdatumError):
    reason = "not_realizable"


class SearchSpaceError(DefdatumError):
    reason = "search_space_cap_exceeded"


class PreconditionError(DefdatumError, ValueError):
    reason = "precondition_failed"
