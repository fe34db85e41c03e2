"""
Partition module: balanced separators and weak r-divisions.
"""

from .base_separator import BaseSeparator, SeparatorResult
from .separators import (
    BFSBisectionSeparator,
    BFSLevelSeparator,
    SEPARATOR_STRATEGIES,
    find_separator,
    get_separator,
    graph_adjacency,
)
from .rdivision import RDivision, Region, build_rdivision, division_update, iter_rdivision, validate_rdivision

__all__ = [
    'BaseSeparator',
    'SeparatorResult',
    'BFSBisectionSeparator',
    'BFSLevelSeparator',
    'SEPARATOR_STRATEGIES',
    'find_separator',
    'get_separator',
    'graph_adjacency',
    'RDivision',
    'Region',
    'build_rdivision',
    'division_update',
    'iter_rdivision',
    'validate_rdivision',
]
