"""Exception hierarchy.

Everything raised on bad input derives from ``QCUncertaintyError`` so callers
(the CLI in particular) can separate user errors from bugs.
"""


class QCUncertaintyError(Exception):
    """Base class for all package errors."""


class NotHermitian(QCUncertaintyError, ValueError):
    pass


class NotSkew(QCUncertaintyError, ValueError):
    pass


class NegativeEigenvalue(QCUncertaintyError, ValueError):
    pass


class NotUnitTrace(QCUncertaintyError, ValueError):
    pass


class NotPSD(QCUncertaintyError, ValueError):
    pass


class NotOrthonormal(QCUncertaintyError, ValueError):
    pass


class RadiusOutOfRange(QCUncertaintyError, ValueError):
    pass


class UnsupportedDimension(QCUncertaintyError, ValueError):
    pass


class WrongDimension(QCUncertaintyError, ValueError):
    pass


class DimensionMismatch(QCUncertaintyError, ValueError):
    pass


class InvalidDistribution(QCUncertaintyError, ValueError):
    pass


class OutOfRange(QCUncertaintyError, ValueError):
    pass


class InvalidMeasurement(QCUncertaintyError, ValueError):
    pass


class ConvergenceFailure(QCUncertaintyError, RuntimeError):
    pass


class UnbiasedStateUnavailable(QCUncertaintyError, RuntimeError):
    pass


class ConfigError(QCUncertaintyError, ValueError):
    pass
