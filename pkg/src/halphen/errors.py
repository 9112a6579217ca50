"""Shared exception types."""


class HalphenError(Exception):
    """Base class for all mathematical errors raised by this package."""


class ZeroDenominatorError(HalphenError):
    pass


class PoleError(HalphenError):
    pass


class UnboundNameError(HalphenError):
    pass


class NonDivisibleError(HalphenError):
    pass


class GeometryError(HalphenError):
    """A geometric precondition failed (bad chart, bad point, bad class)."""


class LiftError(HalphenError):
    """A birational map does not lift to the requested pair of surfaces."""


class FibrationError(HalphenError):
    """Pencil- or fiber-level computation refused (span not preserved, etc.)."""


class ParseError(HalphenError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
