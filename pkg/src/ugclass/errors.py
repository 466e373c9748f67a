"""Exception hierarchy shared by every module."""


class UGClassError(Exception):
    """Base class for all library errors."""


class GraphError(UGClassError, ValueError):
    pass


class ProbabilityOutOfRange(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class ConflictingDuplicateEdge(GraphError):
    pass


class UnknownNode(GraphError, IndexError):
    pass


class ThetaOutOfRange(GraphError):
    pass


class NoLabeledNodes(UGClassError, ValueError):
    pass


class EmptyScores(UGClassError, ValueError):
    pass


class MismatchedLabelSets(UGClassError, ValueError):
    pass


class TracingDisabled(UGClassError, RuntimeError):
    pass


class EmptySample(UGClassError, ValueError):
    pass


class TooFewLabels(UGClassError, ValueError):
    pass


class GraphTooDense(UGClassError, ValueError):
    pass


class UnlabeledValidationNode(UGClassError, ValueError):
    pass


class EmptyMatrix(UGClassError, ValueError):
    pass


class ParseError(UGClassError, ValueError):
    """Malformed input file; carries the 1-based line number when known."""

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class InconsistentEvents(UGClassError, ValueError):
    pass


class InconsistentCounts(UGClassError, ValueError):
    pass


class ConfigError(UGClassError, ValueError):
    pass


class ExperimentError(UGClassError):
    """A component failure inside one repeat of an experiment."""

    def __init__(self, run_index, cause):
        self.run_index = run_index
        self.cause = cause
        super().__init__(f"run {run_index}: {type(cause).__name__}: {cause}")
