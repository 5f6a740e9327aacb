"""Exception types shared by the library and the CLI."""


class ValidationError(ValueError):
    """Malformed or out-of-domain input."""


class VerificationError(AssertionError):
    """A computed quantity disagrees with the value it was checked against."""
