from numerics.exceptions import BrenkeError, InvalidParameter, PrecisionExhausted  # noqa: F401
from powerseries.exceptions import TruncationTooShort, ZeroCoefficient  # noqa: F401
from zetacoeffs.exceptions import GammaTableTooShort  # noqa: F401


class ScalingUndefined(BrenkeError):
    """A normalizing ratio of an asymptotic check has a denominator not certified nonzero."""

    pass


class NotEvenSeries(BrenkeError):
    """A series expected to be even has an odd coefficient not certified zero."""

    pass
