"""Exception hierarchy shared across the package."""


class CopsonError(Exception):
    """Base class for every error raised by this package."""


class NonpositiveBase(CopsonError, ValueError):
    pass


class ZeroPolynomial(CopsonError, ValueError):
    pass


class AlphaOutOfRange(CopsonError, ValueError):
    pass


class IndexBeyondNmax(CopsonError, IndexError):
    pass


class NonpositiveEntry(CopsonError, ValueError):
    pass


class EmptyTable(CopsonError, ValueError):
    pass


class SeriesDomain(CopsonError, ValueError):
    pass


class KTooSmall(CopsonError, ValueError):
    pass


class NonpositiveLambdaMu(CopsonError, ValueError):
    pass


class RangeError(CopsonError, ValueError):
    pass


class UnknownLemma(CopsonError, KeyError):
    pass


class DomainNotContained(CopsonError, ValueError):
    pass


class Undecided(CopsonError, ArithmeticError):
    """An interval computation could not resolve a sign at the precision cap."""
