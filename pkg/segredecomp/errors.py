from typing import Optional


class SegreDecompError(Exception):
    """Base class for every error raised by segredecomp."""


class NonPrimeCharacteristic(SegreDecompError, ValueError):
    pass


class UnsupportedSize(SegreDecompError, ValueError):
    pass


class DivisionByZero(SegreDecompError, ZeroDivisionError):
    pass


class ZeroVector(SegreDecompError, ValueError):
    pass


class EqualPoints(SegreDecompError, ValueError):
    pass


class NotComplementary(SegreDecompError, ValueError):
    pass


class NotOnVariety(SegreDecompError, ValueError):
    pass


class NotSemilinear(SegreDecompError):
    pass


class RadicalNotSubspace(SegreDecompError):
    pass


class RowNotSemilinear(SegreDecompError):
    pass


class InconsistentAutomorphisms(SegreDecompError):
    pass


class NoUniquePreimage(SegreDecompError):
    pass


class PreconditionViolated(SegreDecompError, ValueError):
    pass


class HypothesisFailure(SegreDecompError):
    def __init__(self, condition: str, reason: str):
        super().__init__(f'{condition}: {reason}')
        self.condition = condition
        self.reason = reason


class FormatError(SegreDecompError, ValueError):
    def __init__(self, message: str, lineno: Optional[int] = None):
        super().__init__(
            f'line {lineno}: {message}' if lineno is not None else message
        )
        self.lineno = lineno


# vim:sw=4:ts=4:et:
