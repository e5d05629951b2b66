"""Exception hierarchy shared by all subbergman modules."""


class SubBergmanError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(SubBergmanError):
    """Malformed symbol, polynomial, or complex-number text."""


class NotContractive(SubBergmanError):
    """Symbol violates the closed-unit-ball constraint on the boundary."""


class UnsupportedVariant(SubBergmanError):
    """Operation is not defined for this symbol variant."""


class RuleTooCoarse(SubBergmanError):
    """Quadrature rule cannot resolve the requested moment degrees."""


class NotHermitian(SubBergmanError):
    """Matrix expected to be Hermitian is not, beyond tolerance."""


class NegativeSpectrum(SubBergmanError):
    """Matrix expected to be positive semidefinite has a genuinely negative eigenvalue."""


class NotInRange(SubBergmanError):
    """Vector lies numerically outside the range of the operator square root."""


class DimensionMismatch(SubBergmanError):
    """Polynomial degree or matrix size incompatible with the requested operation."""


class SingularGram(SubBergmanError):
    """Gram subsystem could not be factorized at the working tolerance."""


class IllConditioned(SubBergmanError):
    """Least-squares system lost too much rank at the working tolerance."""


class UsageError(SubBergmanError):
    """Command line or config file does not match the expected grammar."""
