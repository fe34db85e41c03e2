"""
Text formats for graphs, operation scripts and 0/1 matrices, with matching writers.

Graph file:   "n m" then m lines "u v w"; '#' starts a comment line.
Script file:  one operation per line: "I u v w", "D u v", "Q s t", "QF s t", "QD s t", "A v".
Matrix file:  one row per line, entries 0/1 separated by spaces.
Vector file:  one OMv query per line, two contiguous 0/1 strings "u v".
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from src.dynamic.base_structure import DeleteBetween
from src.errors import GraphError, ScriptParseError
from src.graph.weighted_graph import GraphMode, InsertEdge, WeightedGraph
from .base_parser import BaseParser

logger = logging.getLogger(__name__)

QUERY_KINDS = ("Q", "QF", "QD")
SCRIPT_ARITY = {"I": 3, "D": 2, "Q": 2, "QF": 2, "QD": 2, "A": 1}
VectorPair = Tuple[np.ndarray, np.ndarray]


@dataclass(frozen=True)
class ScriptOp:
    """One line of an operation script."""

    kind: str
    u: int
    v: Optional[int] = None
    weight: Optional[float] = None
    line_number: int = 0

    @property
    def is_query(self) -> bool:
        return self.kind in QUERY_KINDS

    @property
    def is_update(self) -> bool:
        return self.kind in ("I", "D")

    def to_action(self):
        """InsertEdge for "I", DeleteBetween for "D"."""
        if self.kind == "I":
            return InsertEdge(self.u, self.v, self.weight)
        if self.kind == "D":
            return DeleteBetween(self.u, self.v)
        raise ScriptParseError(f"Operation {self.kind} is not an edge update", self.line_number)

    def to_line(self) -> str:
        if self.kind == "I":
            return f"I {self.u} {self.v} {self.weight:g}"
        if self.kind == "A":
            return f"A {self.u}"
        return f"{self.kind} {self.u} {self.v}"


def _content_lines(text: str) -> Iterable[Tuple[int, str]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield number, line


def _parse_int(token: str, line_number: int, source: Optional[str]) -> int:
    try:
        return int(token)
    except ValueError:
        raise ScriptParseError(f"Expected an integer, got '{token}'", line_number, source) from None


def _parse_weight(token: str, line_number: int, source: Optional[str]) -> float:
    try:
        weight = float(token)
    except ValueError:
        raise ScriptParseError(f"Expected a number, got '{token}'", line_number, source) from None
    if not 0.0 < weight < float("inf"):
        raise ScriptParseError(f"Weight must be positive and finite, got {token}", line_number, source)
    return weight


class InstanceParser(BaseParser):
    """Parser for the toolkit's plain-text instance formats."""

    def __init__(self):
        """Initialize the instance parser."""
        super().__init__()
        self._supported_formats = [".txt", ".graph", ".ops", ".script", ".mat", ".vec"]

    def supported_formats(self) -> List[str]:
        return self._supported_formats

    @staticmethod
    def _read(file_path: str) -> str:
        path = Path(file_path)
        if not path.exists():
            raise ScriptParseError(f"File not found: {path}", source=str(path))
        return path.read_text(encoding="utf-8")

    # ------------------------------------------------------------------
    # Graphs
    # ------------------------------------------------------------------

    def parse_graph(self, file_path: str, mode: GraphMode = GraphMode.CONDUCTANCE) -> WeightedGraph:
        return self.parse_graph_text(self._read(file_path), mode=mode, source=Path(file_path).name)

    def parse_graph_text(
        self,
        text: str,
        mode: GraphMode = GraphMode.CONDUCTANCE,
        source: Optional[str] = None,
    ) -> WeightedGraph:
        lines = list(_content_lines(text))
        if not lines:
            raise ScriptParseError("Graph file is empty; expected a header line 'n m'", source=source)

        header_number, header = lines[0]
        tokens = header.split()
        if len(tokens) != 2:
            raise ScriptParseError(f"Header must be 'n m', got '{header}'", header_number, source)
        n = _parse_int(tokens[0], header_number, source)
        m = _parse_int(tokens[1], header_number, source)
        if n < 0 or m < 0:
            raise ScriptParseError(f"Header counts must be non-negative, got '{header}'", header_number, source)

        body = lines[1:]
        if len(body) != m:
            raise ScriptParseError(f"Header announces {m} edges, found {len(body)}", header_number, source)

        graph = WeightedGraph(n, mode)
        for number, line in body:
            tokens = line.split()
            if len(tokens) != 3:
                raise ScriptParseError(f"Edge line must be 'u v w', got '{line}'", number, source)
            u = _parse_int(tokens[0], number, source)
            v = _parse_int(tokens[1], number, source)
            w = _parse_weight(tokens[2], number, source)
            try:
                graph.add_edge(u, v, w)
            except GraphError as e:
                raise ScriptParseError(str(e), number, source) from None
        return graph

    # ------------------------------------------------------------------
    # Scripts
    # ------------------------------------------------------------------

    def parse_script(self, file_path: str) -> List[ScriptOp]:
        return self.parse_script_text(self._read(file_path), source=Path(file_path).name)

    def parse_script_text(self, text: str, source: Optional[str] = None) -> List[ScriptOp]:
        ops: List[ScriptOp] = []
        for number, line in _content_lines(text):
            tokens = line.split()
            kind = tokens[0].upper()
            if kind not in SCRIPT_ARITY:
                raise ScriptParseError(f"Unknown operation '{tokens[0]}'", number, source)
            if len(tokens) - 1 != SCRIPT_ARITY[kind]:
                raise ScriptParseError(
                    f"Operation {kind} takes {SCRIPT_ARITY[kind]} arguments, got {len(tokens) - 1}", number, source
                )
            u = _parse_int(tokens[1], number, source)
            if kind == "A":
                ops.append(ScriptOp(kind, u, line_number=number))
                continue
            v = _parse_int(tokens[2], number, source)
            weight = _parse_weight(tokens[3], number, source) if kind == "I" else None
            ops.append(ScriptOp(kind, u, v, weight, line_number=number))
        return ops

    # ------------------------------------------------------------------
    # Matrices
    # ------------------------------------------------------------------

    def parse_matrix(self, file_path: str) -> np.ndarray:
        return self.parse_matrix_text(self._read(file_path), source=Path(file_path).name)

    def parse_matrix_text(self, text: str, source: Optional[str] = None) -> np.ndarray:
        rows: List[List[int]] = []
        for number, line in _content_lines(text):
            tokens = line.split() if " " in line or "\t" in line else list(line)
            if any(token not in ("0", "1") for token in tokens):
                raise ScriptParseError(f"Matrix entries must be 0 or 1, got '{line}'", number, source)
            if rows and len(tokens) != len(rows[0]):
                raise ScriptParseError(f"Row has {len(tokens)} entries, expected {len(rows[0])}", number, source)
            rows.append([int(token) for token in tokens])
        if not rows:
            raise ScriptParseError("Matrix file is empty", source=source)
        return np.array(rows, dtype=bool)

    def parse_vector_pairs(self, file_path: str, shape: Optional[Tuple[int, int]] = None) -> List[VectorPair]:
        return self.parse_vector_pairs_text(self._read(file_path), shape=shape, source=Path(file_path).name)

    def parse_vector_pairs_text(
        self, text: str, shape: Optional[Tuple[int, int]] = None, source: Optional[str] = None
    ) -> List[VectorPair]:
        """
        Parse OMv query vectors.

        Args:
            text: File contents
            shape: Matrix shape (n1, n2) the vector lengths must match
            source: File name for error messages

        Returns:
            List of (u, v) boolean vectors

        Raises:
            ScriptParseError: On a malformed line or a length mismatch
        """
        pairs: List[VectorPair] = []
        for number, line in _content_lines(text):
            tokens = line.split()
            if len(tokens) != 2:
                raise ScriptParseError(f"Expected two 0/1 strings 'u v', got '{line}'", number, source)
            if any(ch not in "01" for token in tokens for ch in token):
                raise ScriptParseError(f"Vector entries must be 0 or 1, got '{line}'", number, source)
            u, v = (np.array([ch == "1" for ch in token], dtype=bool) for token in tokens)
            if shape is not None and (len(u), len(v)) != tuple(shape):
                raise ScriptParseError(
                    f"Vectors have lengths ({len(u)}, {len(v)}), matrix is {shape[0]} x {shape[1]}", number, source
                )
            pairs.append((u, v))
        return pairs


def format_graph(graph: WeightedGraph) -> str:
    """Graph file text; edges in id order."""
    lines = [f"{graph.num_vertices} {graph.num_edges}"]
    for edge in sorted(graph.edges(), key=lambda e: e.edge_id):
        lines.append(f"{edge.u} {edge.v} {edge.weight:g}")
    return "\n".join(lines) + "\n"


def format_script(ops: Sequence[ScriptOp]) -> str:
    return "".join(op.to_line() + "\n" for op in ops)


def format_matrix(matrix: np.ndarray) -> str:
    return "".join(" ".join("1" if x else "0" for x in row) + "\n" for row in np.asarray(matrix, dtype=bool))


def format_vector_pairs(pairs: Sequence[VectorPair]) -> str:
    def bits(x: np.ndarray) -> str:
        return "".join("1" if b else "0" for b in np.asarray(x, dtype=bool))

    return "".join(f"{bits(u)} {bits(v)}\n" for u, v in pairs)
