"""Exception hierarchy.

Two families map onto the CLI exit codes: ``ParameterError`` (bad input,
exit 2) and ``DomainError`` (valid input outside the model's reach, exit 3).
``OracleMismatch`` (exit 4) is raised only by the oracle check.
"""


class Dicke2PError(Exception):
    """Base class for every error raised by the package."""


class ParameterError(Dicke2PError, ValueError):
    """Non-physical or malformed input."""


class NonPositiveFrequency(ParameterError):
    pass


class ZeroQubits(ParameterError):
    pass


class NegativeCoupling(ParameterError):
    pass


class InsufficientPoints(ParameterError):
    pass


class DomainError(Dicke2PError, ArithmeticError):
    """A quantity left the region where the mean-field formulas are defined."""


class UnboundedRegion(DomainError):
    """Coupling at or beyond g = omega/2, where the spectrum is not bounded below."""


class NotSuperradiant(DomainError):
    pass


class DegenerateAngle(DomainError):
    """The optimal quadrature angle is undefined because A_q = B_q = 0."""


class StepTooLarge(DomainError):
    pass


class TooFewPeriods(DomainError):
    pass


class OracleMismatch(Dicke2PError):
    def __init__(self, message, worst=None):
        super().__init__(message)
        self.worst = worst
