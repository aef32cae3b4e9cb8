"""Exception hierarchy shared by every module.

Each class carries a stable ``name`` used in CLI error reports.
"""


class HeisError(Exception):
    """Base class for all domain errors raised by heisgamma."""

    @property
    def name(self) -> str:
        return type(self).__name__


class DivisionByZero(HeisError, ZeroDivisionError):
    pass


class IncompatibleRadicands(HeisError):
    pass


class SingularMatrix(HeisError):
    pass


class NotAutomorphism(HeisError):
    pass


class Singular(NotAutomorphism):
    """Aut-shaped matrix with Delta = 0."""


class ConstraintViolated(HeisError):
    pass


class ModeUnavailable(HeisError):
    """The requested exact value needs more than one quadratic radical."""


class NotInvolution(HeisError):
    pass


class ClosureBoundExceeded(HeisError):
    pass


class NotAbelian(HeisError):
    pass


class NotSimultaneouslyDiagonalizable(HeisError):
    pass


class GradingAxiomViolated(HeisError):
    pass


class InvalidGrading(HeisError):
    pass


class NoConjugatorFound(HeisError):
    pass


class VerificationFailed(HeisError):
    """An internal post-condition did not hold (a transcription bug)."""


class NotAdapted(HeisError):
    pass


class DegenerateMetric(HeisError):
    pass


class DegeneratePlane(HeisError):
    pass


class MalformedInput(HeisError):
    pass
