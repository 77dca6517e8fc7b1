"""Exception types shared across the package."""


class Dqc1LabError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(Dqc1LabError, ValueError):
    """Matrix or register dimensions are inconsistent or too large."""


class ParameterError(Dqc1LabError, ValueError):
    """A scalar parameter is outside its allowed domain."""


class ContractViolationError(Dqc1LabError, ValueError):
    """An input violates a structural precondition (e.g. non-Hermitian)."""


class InvalidStateError(Dqc1LabError, ValueError):
    """A matrix fails the density-matrix requirements."""


class NumericError(Dqc1LabError, RuntimeError):
    """A numerical routine failed or produced inconsistent results."""


class PrecisionWarning(UserWarning):
    """Requested statistical precision is unattainable with the given inputs."""
