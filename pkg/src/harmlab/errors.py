"""Exception hierarchy shared by every harmlab module."""


class HarmlabError(Exception):
    """Base class for all library errors."""


class OrderMismatch(HarmlabError, ValueError):
    pass


class DivisionNearZero(HarmlabError, ArithmeticError):
    """A denominator (or log argument) is within ``eps_div`` of zero."""

    def __init__(self, magnitude, where=None):
        self.magnitude = float(magnitude)
        self.where = where
        msg = f"division by near-zero value (|x| = {self.magnitude:.3e})"
        if where is not None:
            msg += f" at z = {where}"
        super().__init__(msg)


class NonFiniteValue(HarmlabError, ArithmeticError):
    pass


class RadiusExceeded(HarmlabError, ValueError):
    pass


class ParseError(HarmlabError, ValueError):
    def __init__(self, position, message):
        self.position = position
        self.message = message
        super().__init__(f"at position {position}: {message}")


class UnknownCatalogEntry(HarmlabError, KeyError):
    def __str__(self):
        return f"unknown catalog entry {self.args[0]!r}"


class InvalidParameter(HarmlabError, ValueError):
    pass


class PreconditionViolation(HarmlabError, ValueError):
    pass


class DegenerateAtPoint(HarmlabError, ArithmeticError):
    """Evaluation hit a point of the critical set Z (a zero of omega')."""


class DegenerateMobius(HarmlabError, ValueError):
    pass


class PoleHit(HarmlabError, ArithmeticError):
    pass


class FitMismatch(HarmlabError, ValueError):
    pass


class NotDiskAutomorphism(HarmlabError, ValueError):
    pass


class NegativeInnerValue(HarmlabError, ArithmeticError):
    pass


class SenseReversed(HarmlabError, RuntimeError):
    pass


class ConfigError(HarmlabError, ValueError):
    pass


class IoError(HarmlabError, OSError):
    pass
