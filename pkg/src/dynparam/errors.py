"""Exception hierarchy shared by every module of the package."""


class DynParamError(Exception):
    """Base class for all errors raised by dynparam."""


class GraphError(DynParamError, ValueError):
    pass


class BadVertex(GraphError, IndexError):
    pass


class DuplicateEdge(GraphError):
    pass


class MissingEdge(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class ParseError(DynParamError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ModeViolation(ParseError):
    pass


class InfiniteParameter(DynParamError, ValueError):
    pass


class CapNonPositive(DynParamError, ValueError):
    pass


class ModeMismatch(DynParamError, ValueError):
    pass


class EmptySet(DynParamError, ValueError):
    pass


class RadiusExceedsCap(DynParamError, ValueError):
    pass


class GuessNonPositive(DynParamError, ValueError):
    pass


class EpsOutOfRange(DynParamError, ValueError):
    pass


class UnsupportedGraph(DynParamError, ValueError):
    pass


class EmptyW(DynParamError, LookupError):
    pass


class NotCoveringScope(DynParamError, RuntimeError):
    pass


class NotStronglyConnected(DynParamError, ValueError):
    pass


class DegenerateInstance(DynParamError, ValueError):
    pass


class TooLargeForOracle(DynParamError, ValueError):
    pass


class CertificationError(DynParamError, AssertionError):
    pass


class IncompatibleSpec(DynParamError, ValueError):
    pass
