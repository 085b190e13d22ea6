"""Exception types shared across the toolkit.

Every domain error carries a stable ``code`` string; the CLI prints it and
exits with status 1.
"""

from __future__ import annotations


class PsrLabError(Exception):
    code = "ERROR"

    def __init__(self, message: str = "", **details: object) -> None:
        super().__init__(message or self.code)
        self.details = details


class ParseError(PsrLabError):
    code = "PARSE_ERROR"

    def __init__(self, message: str, line: int | None = None) -> None:
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message, line=line)
        self.line = line


class NotAddableError(PsrLabError):
    code = "NOT_ADDABLE"


class InvalidEmbeddingError(PsrLabError):
    code = "INVALID_EMBEDDING"


class UnclassifiableError(PsrLabError):
    code = "UNCLASSIFIABLE"

    def __init__(self, message: str, component: tuple[int, ...] = ()) -> None:
        super().__init__(message, component=component)
        self.component = component


class NotASubgraphError(PsrLabError):
    code = "NOT_A_SUBGRAPH"


class SizeMismatchError(PsrLabError):
    code = "SIZE_MISMATCH"


class LimitExceededError(PsrLabError):
    code = "LIMIT_EXCEEDED"

    def __init__(self, message: str, best_upper=None, witness=None) -> None:
        super().__init__(message)
        self.best_upper = best_upper
        self.witness = witness


class NotPlanarError(PsrLabError):
    code = "NOT_PLANAR"


class SizeLimitError(PsrLabError):
    code = "SIZE_LIMIT"


class NTooSmallError(PsrLabError):
    code = "N_TOO_SMALL"


class MTooSmallError(PsrLabError):
    code = "M_TOO_SMALL"
