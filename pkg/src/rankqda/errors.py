"""Exception types shared across the package."""


class DataError(ValueError):
    """Raised when input data contains missing or non-finite values."""


class TrainingError(ValueError):
    """Raised when training cannot proceed (degenerate labels, failed blocks)."""


class SingularMatrixError(ValueError):
    """Raised when a covariance matrix has no Cholesky factor.

    Callers can recover by increasing the ridge.
    """
