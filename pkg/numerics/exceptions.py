"""Exceptions shared by every app of the project."""


class BrenkeError(Exception):
    """Base class of every domain error raised by the project."""

    pass


class InvalidParameter(BrenkeError):
    """A series, family or operator parameter is outside its valid range."""

    pass


class SignUnknown(BrenkeError):
    """A ball whose sign is needed still contains zero after escalation."""

    pass


class PrecisionExhausted(BrenkeError):
    """The precision cap was reached without certifying the result."""

    pass
