"""Exception types shared across the package."""


class MultitileError(Exception):
    """Base class for all package errors."""


class InvalidSimplexError(MultitileError):
    """Vertex set is degenerate or has the wrong cardinality/dimension."""


class DegenerateInputError(MultitileError):
    """Input does not span the expected dimension."""


class UnsupportedDimensionError(MultitileError):
    """Operation restricted to low ambient dimension."""


class InvalidFlagError(MultitileError):
    """Flag specification is malformed (dimensions, nesting, orientation)."""


class NotEquidecomposableError(MultitileError):
    """Decomposition requested for a pair that is provably not equivalent."""

    def __init__(self, reason: str, witness=None):
        super().__init__(reason)
        self.reason = reason
        self.witness = witness


class NotZeroTilerError(MultitileError):
    """Zero-level representation requested for an element that is not one."""


class HypothesisNotMetError(MultitileError):
    """A criterion's structural hypothesis fails for the given input."""


class DocumentError(MultitileError):
    """Malformed input document; message carries the offending path."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
