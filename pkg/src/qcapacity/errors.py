"""Exception hierarchy shared by all modules."""


class QCapacityError(ValueError):
    """Base class for validation failures."""


class NotSquare(QCapacityError):
    pass


class NotHermitian(QCapacityError):
    pass


class NotPSD(QCapacityError):
    pass


class DimensionMismatch(QCapacityError):
    pass


class InvalidDistribution(QCapacityError):
    pass


class OutOfRange(QCapacityError):
    pass


class InvalidState(QCapacityError):
    pass


class InvalidChannel(QCapacityError):
    """Kraus operators violate completeness or have inconsistent shapes."""


class InvalidChoi(QCapacityError):
    """Choi matrix is not a state or its reference marginal is not maximally mixed."""


class NotStochastic(QCapacityError):
    pass


class NoSignChange(QCapacityError):
    """Bisection bracket does not straddle a root."""


class NoConvergence(RuntimeError):
    """Raised only by callers that demand convergence; optimizers report a flag instead."""
