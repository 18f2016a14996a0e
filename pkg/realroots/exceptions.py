from numerics.exceptions import BrenkeError, SignUnknown  # noqa: F401


class ZeroPolynomial(BrenkeError):
    """The polynomial is (or may be) identically zero."""

    pass


class WrongDegree(BrenkeError):
    """The polynomial does not have the degree the operation requires."""

    pass


class NotRealRooted(BrenkeError):
    """Interlacing was requested for a polynomial that is not certified real-rooted."""

    pass


class DegreeMismatch(BrenkeError):
    """Interlacing needs deg p = deg q + 1."""

    pass
