"""Exception hierarchy shared by every module."""


class OddHeckeError(Exception):
    """Base class for all package errors."""


class ModulusError(OddHeckeError, ValueError):
    """Two operands live in different cyclotomic specializations."""


class UnitError(OddHeckeError, ArithmeticError):
    """Attempt to invert a non-unit scalar."""


class DivisibilityError(OddHeckeError, ArithmeticError):
    """An exact division left a nonzero remainder."""


class ModeError(OddHeckeError, ValueError):
    """Operation not available for the ring's commutation mode."""


class IndexRangeError(OddHeckeError, IndexError):
    """Variable or operator index outside 1..n."""


class ConfigMismatchError(OddHeckeError, ValueError):
    """Operands built over different ring configurations."""


class ParseError(OddHeckeError, ValueError):
    """Malformed expression text.

    ``position`` is the 0-based character offset where parsing failed.
    """

    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at position {position})")
        self.position = position
