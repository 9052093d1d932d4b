"""Exception hierarchy.

Every error carries a stable ``name`` (the class name) and ``exit_code`` used
by the command line front end.
"""


class WscError(Exception):
    exit_code = 1

    @property
    def name(self) -> str:
        return type(self).__name__


class ParseError(WscError, ValueError):
    exit_code = 2


class UnsupportedFamily(WscError):
    exit_code = 3


class SizeMismatch(WscError, ValueError):
    exit_code = 4


class NotCentral(WscError):
    exit_code = 5


class InvalidPartition(WscError, ValueError):
    exit_code = 6


class NonIntegralGrading(WscError):
    exit_code = 7


class OddDimensionalOddPart(WscError):
    exit_code = 8


class NotTypeI(WscError):
    exit_code = 9


class NilpotentNotInLevi(WscError):
    exit_code = 10


class InvalidLevi(WscError, ValueError):
    exit_code = 11


class GroupTooLarge(WscError):
    exit_code = 12


class NotComparable(WscError):
    exit_code = 13


class NotDominant(WscError):
    exit_code = 14


class SingularWeight(WscError):
    exit_code = 15


class AtypicalWeight(WscError):
    exit_code = 16


class DivergentDirection(WscError):
    exit_code = 17


class NonIntegralDivision(WscError):
    exit_code = 18


class InexactDivision(WscError):
    exit_code = 19


class OrbitSizeRequired(WscError):
    exit_code = 20


ALL_ERRORS = tuple(
    cls for cls in list(globals().values())
    if isinstance(cls, type) and issubclass(cls, WscError) and cls is not WscError
)
