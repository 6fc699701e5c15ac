"""Exception taxonomy shared across the package."""


class FtsynthError(Exception):
    """Base class for all package errors."""


class ParseError(FtsynthError):
    """A document or expression could not be parsed."""


class UndeclaredVariable(FtsynthError):
    """An expression or action references a variable that is not declared."""


class IllegalMove(FtsynthError):
    """A semantic step was attempted whose enabling condition does not hold."""


class NonterminatingPeriod(FtsynthError):
    """Simulation reached a state from which the period cannot complete."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class StateCapExceeded(FtsynthError):
    """An exhaustive exploration outgrew its configured state budget."""


class DuplicateMessageIndex(FtsynthError):
    """A network message index is sent more than once per period."""


class EmptyCandidateSet(FtsynthError):
    """A fault-tolerance slot carries no candidate action patterns."""


class NotConsecutive(FtsynthError):
    """A slot position does not sit between two consecutive host actions."""


class MalformedClause(FtsynthError):
    """A 3-CNF clause does not have exactly three literals."""


class PartialStrategy(FtsynthError):
    """A strategy leaves a reachable control position undecided."""

    def __init__(self, message, vertex=None):
        super().__init__(message)
        self.vertex = vertex


class AmbiguousSelection(FtsynthError):
    """A SAT model selects more than one edge from the same control position."""


class BackendUnavailable(FtsynthError):
    """The requested external SAT backend cannot be executed."""


class MalformedDimacs(FtsynthError):
    """A DIMACS file or solver answer could not be interpreted."""


class MissingWcet(FtsynthError):
    """No worst-case execution time is known for an action pattern."""


class RefinementViolation(FtsynthError):
    """Concrete timing leaves the window abstraction of the synthesized model."""

    def __init__(self, message, action=None, dimension=None):
        super().__init__(message)
        self.action = action
        self.dimension = dimension


class CanCheckFailed(FtsynthError):
    """The bus profile check rejected the fault-tolerance message set."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class SynthesisFailed(FtsynthError):
    """A pipeline stage could not produce a result."""

    def __init__(self, stage, message):
        super().__init__(f"{stage}: {message}")
        self.stage = stage
