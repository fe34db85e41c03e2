"""
Read-only Laplacian operator view of a WeightedGraph.
"""

from typing import Optional

import numpy as np
import scipy.sparse as sp

from src.errors import DimensionError
from src.graph.weighted_graph import WeightedGraph


class LaplacianView:
    """L = B^T R^{-1} B over the graph's full vertex id space.

    Rows of the incidence matrix B follow edge insertion order; each row has
    +1 at the edge's ``u`` endpoint and -1 at ``v``. Edge weights act as the
    conductances R^{-1}.
    """

    def __init__(self, graph: WeightedGraph):
        self.graph = graph
        self.n = graph.num_vertices
        edges = list(graph.edges())
        self.edge_ids = np.array([e.edge_id for e in edges], dtype=np.int64)
        self.tails = np.array([e.u for e in edges], dtype=np.int64)
        self.heads = np.array([e.v for e in edges], dtype=np.int64)
        self.weights = np.array([e.weight for e in edges], dtype=np.float64)
        self._matrix: Optional[sp.csr_matrix] = None

    @property
    def num_edges(self) -> int:
        return len(self.weights)

    def _check_vertex_vector(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        if x.shape != (self.n,):
            raise DimensionError(f"Expected a vector of length {self.n}, got shape {x.shape}")
        return x

    def incidence(self) -> sp.csr_matrix:
        m = self.num_edges
        rows = np.concatenate([np.arange(m), np.arange(m)])
        cols = np.concatenate([self.tails, self.heads])
        data = np.concatenate([np.ones(m), -np.ones(m)])
        return sp.csr_matrix((data, (rows, cols)), shape=(m, self.n))

    def apply_incidence(self, x: np.ndarray) -> np.ndarray:
        """B x: potential difference across every edge."""
        x = self._check_vertex_vector(x)
        return x[self.tails] - x[self.heads]

    def apply_resistance(self, f: np.ndarray) -> np.ndarray:
        """R f: per-edge resistance times flow."""
        f = np.asarray(f, dtype=np.float64)
        if f.shape != (self.num_edges,):
            raise DimensionError(f"Expected an edge vector of length {self.num_edges}, got shape {f.shape}")
        return f / self.weights

    def matrix(self) -> sp.csr_matrix:
        if self._matrix is None:
            w = self.weights
            rows = np.concatenate([self.tails, self.heads, self.tails, self.heads])
            cols = np.concatenate([self.tails, self.heads, self.heads, self.tails])
            data = np.concatenate([w, w, -w, -w])
            self._matrix = sp.csr_matrix((data, (rows, cols)), shape=(self.n, self.n))
        return self._matrix

    def dense(self) -> np.ndarray:
        return self.matrix().toarray()

    def matvec(self, x: np.ndarray) -> np.ndarray:
        x = self._check_vertex_vector(x)
        return self.matrix() @ x

    def quadratic_form(self, x: np.ndarray) -> float:
        diff = self.apply_incidence(x)
        return float(np.dot(self.weights, diff * diff))


def quadratic_form(view: LaplacianView, x: np.ndarray) -> float:
    """x^T L x = sum over edges of w(e) (x_u - x_v)^2."""
    if isinstance(view, WeightedGraph):
        view = view.laplacian()
    return view.quadratic_form(x)
