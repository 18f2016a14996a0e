from numerics.exceptions import BrenkeError, InvalidParameter, PrecisionExhausted  # noqa: F401


class TailBoundFailure(BrenkeError):
    """The geometric majorant of a series tail could not be certified."""

    pass


class CacheWriteError(BrenkeError):
    """The coefficient cache could not be written."""

    pass


class CacheCorrupt(BrenkeError):
    """The coefficient cache failed its version or checksum check."""

    pass


class GammaTableTooShort(BrenkeError):
    """A coefficient beyond the end of the table was requested."""

    pass
