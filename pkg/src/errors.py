"""
Exception hierarchy shared by every subsystem.
"""

from typing import Optional


class DynSparsError(Exception):
    """Base class for all toolkit errors."""


class GraphError(DynSparsError, ValueError):
    """Invalid vertex, edge, weight, mode or id space."""


class DimensionError(GraphError):
    """A vertex vector does not match the graph's vertex count."""


class InfeasibleDemandError(GraphError):
    """A demand vector does not sum to zero on some connected component."""


class SolverError(DynSparsError):
    """A numerical routine failed to produce a usable answer."""


class SeparatorError(DynSparsError):
    """A separator strategy could not produce a balanced separator."""


class DivisionError(DynSparsError):
    """An r-division update references state the division does not track."""


class InvariantViolation(DynSparsError):
    """A hard structural invariant failed a runtime check."""


class CutSparsifierError(DynSparsError):
    """A cut sparsifier under-estimates some terminal cut."""


class QueryError(DynSparsError, ValueError):
    """A query was issued with invalid endpoints."""


class ScriptParseError(DynSparsError, ValueError):
    """A text input could not be parsed."""

    def __init__(self, message: str, line_number: Optional[int] = None, source: Optional[str] = None):
        self.line_number = line_number
        self.source = source
        location = ""
        if source:
            location += f"{source}:"
        if line_number is not None:
            location += f"{line_number}:"
        super().__init__(f"{location} {message}" if location else message)
