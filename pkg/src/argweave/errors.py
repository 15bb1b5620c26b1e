"""Exception hierarchy shared across the engine.

Every error carries a stable ``code`` string so the CLI and HTTP layers can
map failures to machine-readable payloads without matching on messages.
"""

from __future__ import annotations


class ArgweaveError(Exception):
    """Base class for all engine errors."""

    code = "ERROR"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class CorpusError(ArgweaveError):
    code = "CORPUS_ERROR"


class DuplicateDocIdError(CorpusError):
    code = "DUPLICATE_DOC_ID"


class VectorFormatError(ArgweaveError):
    code = "VECTOR_FORMAT_ERROR"


class DimensionMismatchError(ArgweaveError):
    code = "DIMENSION_MISMATCH"


class IndexBuildError(ArgweaveError):
    code = "INDEX_BUILD_ERROR"


class GraphFormatError(ArgweaveError):
    code = "GRAPH_FORMAT_ERROR"


class MissingVectorError(ArgweaveError):
    code = "MISSING_VECTOR"


class PathError(ArgweaveError):
    """Base for path-search failures."""


class NoPathError(PathError):
    code = "NO_PATH"


class EndpointExcludedError(PathError):
    code = "ENDPOINT_EXCLUDED"


class HopBudgetExceededError(PathError):
    code = "HOP_BUDGET_EXCEEDED"


class NoDisjointCombinationError(PathError):
    code = "NO_DISJOINT_COMBINATION"


class EmptyQueryError(ArgweaveError):
    code = "EMPTY_QUERY"


class NoCandidateError(ArgweaveError):
    code = "NO_CANDIDATE"


class FilterError(ArgweaveError):
    """Base for filter-language errors; carries a 1-based source position."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.bare_message = message
        self.line = line
        self.column = column


class FilterSyntaxError(FilterError):
    code = "FILTER_SYNTAX_ERROR"


class FilterTypeError(FilterError):
    code = "FILTER_TYPE_ERROR"
