"""Exception hierarchy for ceslab.

All library errors derive from :class:`CeslabError` so that callers can
distinguish them from built-in exceptions.
"""

__all__ = [
    "CeslabError",
    "InvalidDimensionError",
    "LambdaInSigmaZeroError",
    "UnsupportedExponentError",
    "UnsupportedParameterError",
    "WrongRegimeError",
    "ProductOverflowError",
    "InvalidConfigError",
]


class CeslabError(Exception):
    """Base class for all ceslab errors."""


class InvalidDimensionError(CeslabError):
    """Raised when a matrix/vector size is zero, negative or mismatched."""


class LambdaInSigmaZeroError(CeslabError):
    """Raised when lambda is within the numerical shadow of {0} u {1/n}.

    Resolvent entries scale like 1/dist(lambda, {0} u {1/n}); below the
    floor no digits survive in double precision.
    """

    def __init__(self, lam, gamma, nearest):
        self.lam = lam
        self.gamma = gamma
        self.nearest = nearest
        super().__init__(
            f"lambda={lam} is within {gamma:.3e} of {nearest!r}, a pole of "
            f"the closed-form resolvent"
        )


class UnsupportedExponentError(CeslabError):
    """Raised for exponents p outside (1, inf] (or too close to 1)."""


class UnsupportedParameterError(CeslabError):
    """Raised for parameter values outside an operation's domain (e.g. alpha >= 1)."""


class WrongRegimeError(CeslabError):
    """Raised when a bound is requested for lambda outside its region of validity.

    Carries ``required`` — a human-readable description of the region the
    bound needs.
    """

    def __init__(self, message, required):
        self.required = required
        super().__init__(f"{message} (requires: {required})")


class ProductOverflowError(CeslabError):
    """Raised when a matrix entry over/underflowed during product evaluation."""

    def __init__(self, row, col):
        self.row = row
        self.col = col
        super().__init__(f"non-finite product at entry (n={row}, m={col})")


class InvalidConfigError(CeslabError):
    """Raised for unusable sweep/CLI configurations (empty grid, bad sizes, ...)."""
