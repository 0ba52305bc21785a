"""Exception hierarchy.

``ConfigError`` covers malformed systems, drives and requests; ``NumericalError``
covers failures of the integrator or of trace analysis. The CLI maps them to
exit codes 2 and 3.
"""


class RabiSpecError(Exception):
    """Base class for all package errors."""


class ConfigError(RabiSpecError, ValueError):
    """Invalid input: system description, drive, indices, options."""


class NumericalError(RabiSpecError, ArithmeticError):
    """Integration or trace-analysis failure."""


class AsymmetricCoupling(ConfigError):
    pass


class NonzeroDiagonal(ConfigError):
    pass


class DuplicateLabel(ConfigError):
    pass


class FewerThanTwoLevels(ConfigError):
    pass


class NegativeEnergy(ConfigError):
    pass


class InvalidDrive(ConfigError):
    pass


class LevelOutOfRange(ConfigError, IndexError):
    pass


class UncoupledTransition(ConfigError):
    """The requested pair has I[i][j] == 0, so detuning and profile are undefined."""


# the spectrum/validity operations name the same condition after the target
UncoupledTarget = UncoupledTransition


class DegenerateTransition(ConfigError):
    """The requested pair has omega_i == omega_j; its profile sits at the origin."""


class NonNormalizedInitial(ConfigError):
    pass


class EmptyWindow(ConfigError):
    pass


class StepSizeUnderflow(NumericalError):
    pass


class NormDriftExceeded(NumericalError):
    pass


class NoPeakFound(NumericalError):
    pass
