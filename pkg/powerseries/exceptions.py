from numerics.exceptions import BrenkeError, InvalidParameter  # noqa: F401


class TruncationTooShort(BrenkeError):
    """A truncated series does not reach the order an operation needs."""

    pass


class ZeroCoefficient(BrenkeError):
    """A coefficient that must be nonzero is (or may be) zero."""

    pass
