"""Exception types raised across the package."""


class MCCError(Exception):
    """Base class for all errors raised by mcc."""


class SpecMismatchError(MCCError, ValueError):
    """Operands belong to different fields or rings."""


class FieldSpecError(MCCError, ValueError):
    """Invalid characteristic, extension degree or modulus."""


class UndefinedDegreeError(MCCError, ValueError):
    """Degree (or x_s-order) requested for the zero polynomial."""


class CapExceededError(MCCError, ValueError):
    """A size cap (ring length or enumeration count) would be exceeded."""


class RankDeficiencyError(MCCError, ValueError):
    """Rows that were required to be independent are not."""


class ContainmentError(MCCError, AssertionError):
    """A polynomial that must lie in the code does not."""


class ParseError(MCCError, ValueError):
    """Malformed polynomial text; ``pos`` is the 0-based character offset."""

    def __init__(self, message, text="", pos=0):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}")
