"""
Abstract base class for instance parsers.
"""

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, List

import numpy as np

from src.graph.weighted_graph import GraphMode, WeightedGraph


class BaseParser(ABC):
    """Abstract base class for graph, script and matrix parsers."""

    def __init__(self):
        """Initialize the parser."""
        pass

    @abstractmethod
    def parse_graph(self, file_path: str, mode: GraphMode = GraphMode.CONDUCTANCE) -> WeightedGraph:
        """
        Parse a graph file.

        Args:
            file_path: Path to the graph file
            mode: How the edge weights are interpreted

        Returns:
            WeightedGraph with edges numbered in file order

        Raises:
            ScriptParseError: If the file is malformed
        """
        pass

    @abstractmethod
    def parse_script(self, file_path: str) -> List[Any]:
        """
        Parse an operation script.

        Args:
            file_path: Path to the script file

        Returns:
            List of operations in file order

        Raises:
            ScriptParseError: If a line is malformed
        """
        pass

    @abstractmethod
    def parse_matrix(self, file_path: str) -> np.ndarray:
        """
        Parse a dense 0/1 matrix.

        Args:
            file_path: Path to the matrix file

        Returns:
            Boolean matrix

        Raises:
            ScriptParseError: If the grid is ragged or holds values other than 0/1
        """
        pass

    @abstractmethod
    def supported_formats(self) -> List[str]:
        """
        Get list of supported file formats.

        Returns:
            List of supported file extensions
        """
        pass

    def validate_file(self, file_path: str) -> bool:
        """
        Validate if the file can be parsed by this parser.

        Args:
            file_path: Path to the file

        Returns:
            True if file is supported, False otherwise
        """
        file_ext = Path(file_path).suffix.lower()
        return file_ext in self.supported_formats()

