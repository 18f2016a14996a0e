from numerics.exceptions import BrenkeError, InvalidParameter, PrecisionExhausted  # noqa: F401
from zetacoeffs.exceptions import CacheCorrupt, CacheWriteError  # noqa: F401


class ExpressionError(BrenkeError):
    """A --A/--B series expression could not be parsed."""

    pass


class ConfigError(BrenkeError):
    """A combination of command-line flags is invalid."""

    pass
