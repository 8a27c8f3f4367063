"""Exception types raised by the numerical routines."""


class DomainError(ValueError):
    """A numerical routine could not produce a result for the given parameters.

    ``reason`` is a short machine-parsable token (``truncation``, ``bracket``,
    ``quadrature``) used by the command-line front end.
    """

    reason = "domain"


class TruncationError(DomainError):
    reason = "truncation"


class BracketError(DomainError):
    reason = "bracket"


class QuadratureError(DomainError):
    reason = "quadrature"

    def __init__(self, message: str, partial: float, error_estimate: float):
        super().__init__(message)
        self.partial = partial
        self.error_estimate = error_estimate
