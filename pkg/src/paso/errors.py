"""Exception types shared across the package."""


class PasoError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(PasoError):
    """Lexical or syntactic error in a rule file, with source position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class GroundingError(PasoError):
    """The program cannot be instantiated into a finite ground program."""


class EvaluationError(PasoError):
    """A probability annotation does not evaluate to a valid interval."""


class UnboundAnnotationVariable(EvaluationError):
    """An annotation variable was used without a value for it."""


class ResourceCapError(PasoError):
    """A configured search-space limit was exceeded."""
