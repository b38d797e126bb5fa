"""Exception hierarchy shared by every module in the package."""


class PerIndexError(Exception):
    """Base class for all package errors."""


class MalformedElementError(PerIndexError, ValueError):
    """A coordinate vector is not a valid element of the given group."""


class MalformedModelError(PerIndexError, ValueError):
    """Model data is structurally inconsistent (shapes, bit values, maps)."""


class UnsupportedInputError(PerIndexError, ValueError):
    """Input is well formed but outside what the operation supports."""


class PreconditionError(PerIndexError, ValueError):
    """An operation was called with arguments violating its precondition."""


class NotSpinCError(PreconditionError):
    """The operation needs an integral lift c1 of v2, and the model has none."""


class BasisError(PerIndexError, ValueError):
    """Vectors expected to be linearly independent are not."""


class InconsistentPresentationError(PerIndexError, ValueError):
    """A group presentation does not define a group of the advertised shape."""


class InvariantViolation(PerIndexError, AssertionError):
    """An internal mathematical guarantee failed; indicates a bug or bad model."""
