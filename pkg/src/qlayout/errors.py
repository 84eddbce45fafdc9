"""Exception hierarchy shared by every qlayout module."""


class QLayoutError(Exception):
    """Base class for all errors raised by qlayout."""


class ParseError(QLayoutError):
    """Malformed graph or layout document."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class GraphError(QLayoutError):
    """A graph violates a precondition (unknown vertex, disconnected input, ...)."""


class LayoutError(QLayoutError):
    """A layout is structurally broken: not a permutation, missing edges, bad queue index."""


class CapacityError(QLayoutError):
    """An exhaustive search was asked to run beyond its configured cap."""


class InternalError(QLayoutError):
    """A constructed object failed its own post-validation. Always a bug."""
