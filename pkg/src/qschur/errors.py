"""Exception types shared by every module of the package."""


class QSSError(Exception):
    """Base class for all package errors."""


class InvalidArgs(QSSError, ValueError):
    pass


class NonExactDivision(QSSError, ArithmeticError):
    """Raised when a Laurent polynomial division leaves a remainder."""


class IndexOutOfRange(QSSError, IndexError):
    pass


class LengthMismatch(QSSError, ValueError):
    pass


class DegreeMismatch(QSSError, ValueError):
    pass


class ShapeMismatch(QSSError, ValueError):
    pass


class RankMismatch(QSSError, ValueError):
    pass


class NotMinimalRep(QSSError, ValueError):
    pass


class NotInM(QSSError, ValueError):
    """A matrix lies outside M(m|n); by convention it indexes the zero element."""


class ChainLeavesM(QSSError, ValueError):
    pass


class NotInSpan(QSSError, ValueError):
    pass


class UnsupportedPower(QSSError, ValueError):
    pass


class InvalidIndices(QSSError, ValueError):
    pass
