"""Exception types raised across the package."""


class NilNielsenError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(NilNielsenError, ValueError):
    """Shapes of matrices or group elements do not conform."""


class FiltrationError(NilNielsenError, ValueError):
    """An endomorphism image leaves the filtration layer of its basis element."""

    def __init__(self, basis, message):
        super().__init__(message)
        self.basis = basis


class SigmaError(NilNielsenError):
    """The lift tuple does not define an n-valued map on the nilmanifold.

    ``kind`` is ``"no match"`` or ``"ambiguous match"``; ``generator`` and
    ``lift`` identify the offending pair (``lift`` is 0-based).
    """

    def __init__(self, kind, generator, lift, message):
        super().__init__(message)
        self.kind = kind
        self.generator = generator
        self.lift = lift


class InputError(NilNielsenError, ValueError):
    """Malformed JSON input (structure, types or syntax)."""
