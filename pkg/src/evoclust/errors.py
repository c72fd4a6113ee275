"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """A run configuration or input file is invalid."""


class ResampleRequiredError(ArithmeticError):
    """A rotation has an eigenvalue of -1, so its principal logarithm
    (and hence any fractional power) is undefined; draw a new rotation."""


class OperatorInapplicableError(ValueError):
    """A mean-mutation operator needs more clusters than the genotype has."""


class DegenerateModelError(RuntimeError):
    """A clustering algorithm collapsed (e.g. an EM component lost all
    responsibility mass) and could not recover."""


class StaleIndividualError(RuntimeError):
    """An operation required cached fitness/penalty values that are absent."""
