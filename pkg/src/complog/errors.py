"""Exception hierarchy shared by the front-end and the query engines."""

from __future__ import annotations


class ComplogError(Exception):
    """Base class for every error raised by this package."""


class ComplogSyntaxError(ComplogError, ValueError):
    """Malformed program or goal text. Always carries a source position."""

    kind = "syntax"

    def __init__(self, message: str, line: int, column: int):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}")


class LexError(ComplogSyntaxError):
    kind = "lex"


class ParseError(ComplogSyntaxError):
    kind = "parse"


class DuplicateStatementError(ComplogSyntaxError):
    kind = "duplicate"


class NegativeWeightError(ComplogSyntaxError):
    kind = "negative-weight"


class QueryError(ComplogError, ValueError):
    """A well-formed query that cannot be answered against the given model.

    ``machine`` names the engine that rejected the query ("epistemic" or
    "productive") once the error has crossed the inference layer.
    """

    def __init__(self, message: str, atoms=(), machine: str | None = None):
        self.atoms = tuple(atoms)
        self.machine = machine
        super().__init__(message)

    def __str__(self) -> str:
        msg = super().__str__()
        return f"[{self.machine}] {msg}" if self.machine else msg


class UnknownAtomError(QueryError):
    pass


class UnknownEventError(QueryError):
    pass


class MixedQueryError(QueryError):
    pass


class NoCandidatesError(QueryError):
    pass


class AugmentError(ComplogError, ValueError):
    pass


class BudgetExceeded(ComplogError, RuntimeError):
    pass
