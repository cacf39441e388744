"""Exception hierarchy for the engine and the job DSL."""


class EngineError(Exception):
    """Base class for computational failures (exit code 2 at the CLI)."""


class CapExceededError(EngineError):
    """A configured cap was hit before a certified answer was reached.

    Every cap hit is a hard, labeled error; the engine never silently
    truncates a computation.
    """

    def __init__(self, cap_name: str, limit: int, detail: str = ""):
        self.cap_name = cap_name
        self.limit = limit
        msg = f"cap exceeded: {cap_name} (limit {limit})"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class RingMismatchError(EngineError):
    """Operands live in different ambient polynomial rings."""


class InvalidParameterSystemError(EngineError):
    """The supplied elements are not a (sub)system of parameters."""


class HorizonError(EngineError):
    """A graded computation has no certified working horizon."""


class DslError(ValueError):
    """Base class for job-text errors, with a 1-based source position."""

    def __init__(self, message: str, line: int, column: int):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class DslSyntaxError(DslError):
    pass


class DslSemanticError(DslError):
    pass
