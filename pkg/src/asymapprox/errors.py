"""Exception hierarchy shared by every module of the package."""


class ApproximantError(Exception):
    """Base class for all package errors."""


class NonConvergence(ApproximantError):
    """An iteration (Newton, Aberth, shooting) ran out of steps."""


class SingularJacobian(ApproximantError):
    pass


class DegenerateNodes(ApproximantError):
    pass


class InsufficientPoints(ApproximantError):
    pass


class MismatchedExpansionPoint(ApproximantError):
    pass


class ZeroLeadingCoefficient(ApproximantError):
    pass


class NonpositiveLeadingCoefficient(ApproximantError):
    pass


class MissingCoefficients(ApproximantError):
    pass


class MissingCriticalConstants(ApproximantError):
    pass


class NoPhysicalRoot(ApproximantError):
    """No root survives the sign/plausibility filter for the problem."""


class ZeroAsymptoticConstant(ApproximantError):
    pass


class ZeroCenterValue(ApproximantError):
    pass


class PoleEncountered(ApproximantError):
    """The denominator of a reciprocal-form approximant vanished on the real axis."""


class ConvergedToTrivial(ApproximantError):
    """Shooting landed on the trivial solution u = 0."""


class InsufficientCoefficients(ApproximantError):
    pass


class DomainMismatch(ApproximantError):
    pass
