"""Exception types shared across the package."""


class SpecinferError(Exception):
    """Base class for all errors raised by this package."""


class DocParseError(SpecinferError):
    """A documentation file violates the expected schema or layout."""


class DocValidationError(SpecinferError):
    """A documentation model violates a structural invariant (e.g. a hierarchy cycle)."""


class UnknownClassError(SpecinferError, KeyError):
    """A class name was requested that the model does not contain."""


class UnknownMethodError(SpecinferError, KeyError):
    """A method was requested that is not part of the graph universe."""


class BackendTransportError(SpecinferError):
    """The similarity backend could not be reached or returned garbage."""
