"""
Vertex and edge vectors: demands, potentials and flows.
"""

from dataclasses import dataclass
from typing import Dict

import numpy as np

from src.graph.weighted_graph import WeightedGraph

# Real-valued vertex vectors over the graph's id space.
Demand = np.ndarray
Potential = np.ndarray


def unit_demand(num_vertices: int, u: int, v: int) -> Demand:
    """chi_{u,v}: +1 at u, -1 at v, 0 elsewhere."""
    chi = np.zeros(num_vertices, dtype=np.float64)
    chi[u] += 1.0
    chi[v] -= 1.0
    return chi


@dataclass
class Flow:
    """Per-edge flow values following each edge's u -> v orientation."""

    graph: WeightedGraph
    values: Dict[int, float]
    source: int
    sink: int

    @property
    def value(self) -> float:
        """Net flow leaving the source."""
        total = 0.0
        for edge in self.graph.incident_edges(self.source):
            f = self.values.get(edge.edge_id, 0.0)
            total += f if edge.u == self.source else -f
        return total

    def energy(self) -> float:
        """sum_e r(e) f(e)^2 with r(e) = 1 / w(e)."""
        return float(sum(f * f / self.graph.edge(eid).weight for eid, f in self.values.items()))

    def net_outflow(self) -> np.ndarray:
        out = np.zeros(self.graph.num_vertices, dtype=np.float64)
        for eid, f in self.values.items():
            edge = self.graph.edge(eid)
            out[edge.u] += f
            out[edge.v] -= f
        return out

    def conservation_residual(self) -> float:
        """Largest |net outflow| over vertices other than source and sink."""
        out = self.net_outflow()
        out[self.source] = 0.0
        out[self.sink] = 0.0
        return float(np.max(np.abs(out))) if len(out) else 0.0


def flow_from_potentials(graph: WeightedGraph, phi: Potential, source: int, sink: int) -> Flow:
    """Electrical flow induced by potentials: f(e) = w(e) (phi_u - phi_v)."""
    values = {e.edge_id: e.weight * (phi[e.u] - phi[e.v]) for e in graph.edges()}
    return Flow(graph, values, source, sink)
