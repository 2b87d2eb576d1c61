"""Exception and warning types shared across the package.

Each error carries an ``exit_code`` used by the command-line front end.
"""


class FracterpError(Exception):
    exit_code = 1


class ParseError(FracterpError, ValueError):
    exit_code = 2


class CertificateRefused(FracterpError):
    """The operator's spectrum is not inside the requested region."""

    exit_code = 3

    def __init__(self, message, offending=None):
        super().__init__(message)
        self.offending = offending


class NotConverged(FracterpError, ArithmeticError):
    """A truncated series did not meet its tolerance within ``max_terms``.

    The partial result is attached as ``result`` so callers can still use it.
    """

    exit_code = 4

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class NotConvergedWarning(RuntimeWarning):
    pass


class DomainError(FracterpError, ValueError):
    exit_code = 5


class PoleError(DomainError):
    pass


class FactorZero(DomainError):
    pass


class GammaPole(DomainError):
    pass


class BranchAmbiguous(DomainError):
    pass


class IllConditioned(DomainError):
    pass


class DegenerateAngle(DomainError):
    pass


class GridMismatch(DomainError):
    pass
