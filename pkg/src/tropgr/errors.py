"""Exception types raised across the package."""

from __future__ import annotations


class TropGrError(Exception):
    """Base class for all package errors."""


class DivisionByZero(TropGrError, ZeroDivisionError):
    pass


class ParseError(TropGrError, ValueError):
    """Malformed text input. ``offset`` is the byte offset of the failure."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.message = message
        self.offset = offset


class InvalidTree(TropGrError, ValueError):
    pass


class InvalidMetric(TropGrError, ValueError):
    pass


class RankDeficient(TropGrError, ValueError):
    pass


class NotSaturated(TropGrError, ValueError):
    pass


class NotTreeMetric(TropGrError, ValueError):
    pass


class BoundExceeded(TropGrError, ValueError):
    pass


class NoConeFound(TropGrError, RuntimeError):
    pass


class IncompatibleInputs(TropGrError, ValueError):
    pass


class LocalizationViolation(TropGrError, ValueError):
    pass


class CertificateFailure(TropGrError, RuntimeError):
    pass
