"""
Parsing module for the toolkit's instance formats.
Handles graph files, operation scripts, 0/1 matrices and OMv query vectors.
"""

from .base_parser import BaseParser
from .instance_parser import (
    QUERY_KINDS,
    InstanceParser,
    ScriptOp,
    format_graph,
    format_matrix,
    format_script,
    format_vector_pairs,
)

__all__ = [
    'BaseParser',
    'QUERY_KINDS',
    'InstanceParser',
    'ScriptOp',
    'format_graph',
    'format_matrix',
    'format_script',
    'format_vector_pairs',
]
