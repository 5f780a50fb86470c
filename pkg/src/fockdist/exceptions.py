"""Exception and warning types shared across the package."""


class ConfigurationError(ValueError):
    """A construction parameter is outside its valid range."""


class BasisMismatchError(ValueError):
    """Two operators built on different truncated bases were combined."""


class NonHermitianError(ValueError):
    """An operation that requires a Hermitian element received a non-Hermitian one."""


class TruncationUnsafeError(ValueError):
    """An element's support is too close to the cutoff for truncation-exact results."""


class TruncationWarning(UserWarning):
    """Result may carry truncation error because the support margin is violated."""
