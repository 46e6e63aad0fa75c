"""Exception taxonomy shared across the package.

The CLI maps these onto exit codes: validation failures exit 1, config
errors exit 2, training/runtime errors exit 3.
"""


class UpdrsNetError(Exception):
    """Base class for all errors raised by this package."""


class DatasetError(UpdrsNetError):
    """Malformed, missing, or degenerate dataset input."""


class ConfigError(UpdrsNetError):
    """Invalid experiment configuration or checkpoint schema."""


class TrainingError(UpdrsNetError):
    """Numerical failure during training (non-finite loss or gradient)."""
