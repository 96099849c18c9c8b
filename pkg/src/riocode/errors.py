"""Exception hierarchy shared by the codec, simulator and analyzer."""


class RioError(Exception):
    """Base class for every error raised by :mod:`riocode`."""


class DimensionMismatch(RioError, ValueError):
    pass


class NoValidSuccessor(RioError):
    """The prior state has no legal successor carrying the requested info word."""


class EnumerationTooLarge(RioError):
    pass


class SearchSpaceTooLarge(RioError):
    pass


class NotFound(RioError):
    """Exhaustive search proved that no code exists for the given parameters."""


class ThresholdOutOfRange(RioError, ValueError):
    pass


class IndexOutOfRange(RioError, IndexError):
    pass


class AlreadyProgrammed(RioError):
    pass


class NotProgrammed(RioError):
    pass


class UnsupportedM(RioError, ValueError):
    pass


class DomainError(RioError, ValueError):
    pass


class Infeasible(RioError):
    """The requested rate cannot be written the requested number of times."""
