"""Exception hierarchy shared by all modules."""


class PatternError(ValueError):
    """Base class for malformed pattern input."""


class CoverageError(PatternError):
    pass


class OverlapError(PatternError):
    pass


class CycleError(PatternError):
    pass


class DisconnectedError(PatternError):
    pass


class SizeError(PatternError):
    pass


class PatternSyntaxError(PatternError):
    """Unparseable pattern text; carries the 1-based line and column."""

    def __init__(self, msg, line, column):
        super().__init__(f"{msg} (line {line}, column {column})")
        self.line = line
        self.column = column


class StructureError(Exception):
    """The requested block/collapse structure does not exist for the pattern."""


class InvalidCollapseError(StructureError):
    """Shadows of the components do not form a valid pattern."""


class ConvergenceError(ArithmeticError):
    """Iteration budget exhausted before reaching the requested tolerance."""


class VerificationFailure(AssertionError):
    """A verification harness found a counterexample.

    ``counterexample`` is the offending pattern (or None) so callers can
    replay it.
    """

    def __init__(self, msg, counterexample=None):
        super().__init__(msg)
        self.counterexample = counterexample
