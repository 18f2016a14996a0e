from numerics.exceptions import BrenkeError, InvalidParameter  # noqa: F401
from powerseries.exceptions import TruncationTooShort, ZeroCoefficient  # noqa: F401


class RatioUndefined(BrenkeError):
    """A ratio of coefficients was requested where the denominator is not certified nonzero."""

    pass
