"""Exception hierarchy shared by every rankability module."""


class RankabilityError(Exception):
    """Base class for all errors raised by this package."""


class GraphError(RankabilityError, ValueError):
    pass


class NonSquareError(GraphError):
    pass


class SelfLoopError(GraphError):
    pass


class NonBinaryEntryError(GraphError):
    pass


class TooSmallError(GraphError):
    pass


class IndexOutOfRangeError(GraphError, IndexError):
    pass


class LengthMismatchError(RankabilityError, ValueError):
    pass


class TooLargeError(RankabilityError, ValueError):
    pass


class SearchTimeoutError(RankabilityError, TimeoutError):
    """Raised when an exact search exceeds its time budget."""


class NoConvergenceError(RankabilityError, ArithmeticError):
    pass


class EmptySpectrumError(RankabilityError, ValueError):
    pass


class BadProbabilityError(RankabilityError, ValueError):
    pass


class ConfigError(RankabilityError, ValueError):
    pass


class EmptyTrainingSetError(RankabilityError, ValueError):
    pass


class VertexCountMismatchError(RankabilityError, ValueError):
    pass


class SchemaVersionMismatchError(RankabilityError):
    pass


class CorruptModelError(RankabilityError):
    pass


class DegenerateInputError(RankabilityError, ValueError):
    """Raised when a correlation is requested for a constant vector."""


class MalformedRowError(RankabilityError, ValueError):
    def __init__(self, line, message):
        super().__init__(f"line {line}: {message}")
        self.line = line


class MissingHeaderError(RankabilityError, ValueError):
    pass


class TooFewTeamsError(RankabilityError, ValueError):
    pass


class UnknownSeasonError(RankabilityError, KeyError):
    pass


class ModelMissingError(RankabilityError):
    pass
