from numerics.exceptions import BrenkeError, InvalidParameter, SignUnknown  # noqa: F401
from powerseries.exceptions import TruncationTooShort, ZeroCoefficient  # noqa: F401


class DegreeExceedsN(BrenkeError):
    """A polynomial of degree above n was reversed with respect to n."""

    pass


class ZeroDenominatorCoefficient(BrenkeError):
    """An operator divides by a series coefficient that is zero."""

    pass


class ZeroTheta(BrenkeError):
    """Upsilon_B was given theta_0 = 0."""

    pass
