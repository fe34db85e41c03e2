"""
Pydantic data models for the toolkit.
Defines the structure of certificates, audit reports, replay records and benchmark rows.
"""

from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field


class SparsifierCertificate(BaseModel):
    """Parameters and sample budget of one spectral sparsification."""

    epsilon: float = Field(..., gt=0.0, description="Spectral approximation parameter")
    delta: float = Field(..., gt=0.0, lt=1.0, description="Failure probability")
    sample_count: int = Field(..., ge=0, description="Sample budget q (also the output edge bound)")
    sample_constant: float = Field(..., gt=0.0, description="Constant C_s in the sample budget")
    seed: int = Field(..., description="Seed used by the sampler")
    compressed: bool = Field(False, description="Whether sampling replaced the input edges")
    output_edges: int = Field(0, ge=0, description="Number of merged edges in the output")
    measured_epsilon: float = Field(0.0, ge=0.0, description="Largest certified deviation over sampled components")
    rounds: int = Field(0, ge=0, description="Most sampling rounds any component needed")
    within_budget: bool = Field(True, description="Whether the output fits the sample budget q")
    within_epsilon: bool = Field(True, description="Whether the measured deviation is at most epsilon")


class DivisionCheck(BaseModel):
    """One named check of the r-division validator."""

    name: str = Field(..., description="Check identifier")
    passed: bool = Field(..., description="Whether the check holds")
    measured: Optional[float] = Field(None, description="Measured quantity")
    bound: Optional[float] = Field(None, description="Bound the measured quantity is compared with")
    detail: str = Field("", description="Human-readable explanation")
    hard: bool = Field(True, description="Whether a failure invalidates the division (false for report-only bounds)")


class DivisionReport(BaseModel):
    """Result of validating an r-division against its graph."""

    r: int = Field(..., description="Region size bound")
    num_vertices: int = Field(..., description="Vertex count of the graph")
    region_count: int = Field(..., description="Number of regions")
    total_boundary: int = Field(..., description="Sum of per-region boundary sizes")
    boundary_vertices: int = Field(..., description="Number of distinct boundary vertices")
    max_region_size: int = Field(..., description="Largest region vertex count")
    max_region_boundary: int = Field(..., description="Largest per-region boundary size")
    updates_since_rebuild: int = Field(0, description="Updates applied since construction")
    checks: List[DivisionCheck] = Field(default_factory=list, description="Individual checks")

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failed(self) -> List[DivisionCheck]:
        return [check for check in self.checks if not check.passed]

    def hard_failures(self) -> List[DivisionCheck]:
        return [check for check in self.checks if check.hard and not check.passed]


class SpectralReport(BaseModel):
    """Empirical comparison of two quadratic forms."""

    model_config = ConfigDict(ser_json_inf_nan="constants")

    epsilon: float = Field(..., description="Tolerance the ratios are checked against")
    trials: int = Field(..., description="Number of random probe vectors")
    probes: int = Field(..., description="Total number of probe vectors evaluated")
    min_ratio: float = Field(..., description="Smallest observed x^T L_b x / x^T L_a x")
    max_ratio: float = Field(..., description="Largest observed ratio")
    worst_ratio: float = Field(..., description="Observed ratio farthest from 1")
    passed: bool = Field(..., description="Whether every ratio lies in [1-eps, 1+eps]")


class QueryRecord(BaseModel):
    """One replayed query compared against its oracle."""

    model_config = ConfigDict(ser_json_inf_nan="constants")

    op_index: int = Field(..., description="Zero-based index of the operation in the script")
    kind: str = Field(..., description="Query kind (Q, QF or QD)")
    s: int = Field(..., description="Source vertex")
    t: int = Field(..., description="Target vertex")
    answer: float = Field(..., description="Value returned by the dynamic structure")
    oracle: float = Field(..., description="Value computed from scratch")
    ratio: float = Field(..., description="answer / oracle")
    micros: float = Field(..., description="Query time of the dynamic structure in microseconds")
    seed: int = Field(0, description="Seed of the replay")


class ReplayReport(BaseModel):
    """Aggregate of a replay run."""

    model_config = ConfigDict(ser_json_inf_nan="constants")

    mode: str = Field(..., description="Structure mode (eflow, maxflow, apsp, subgraph)")
    seed: int = Field(..., description="Seed of the replay")
    worst_case: bool = Field(False, description="Whether the rebuilding scheduler was used")
    updates: int = Field(0, description="Number of update operations applied")
    records: List[QueryRecord] = Field(default_factory=list, description="Per-query records")
    update_micros: List[float] = Field(default_factory=list, description="Per-update times")
    query_graph_edges: List[int] = Field(default_factory=list, description="Assembled graph sizes")
    failures: int = Field(0, description="Finite queries outside the mode tolerance")
    finite_queries: int = Field(0, description="Queries whose oracle value is finite")

    @property
    def failure_fraction(self) -> float:
        if self.finite_queries == 0:
            return 0.0
        return self.failures / self.finite_queries


class BenchRow(BaseModel):
    """One row of the r-sweep benchmark CSV."""

    r: int = Field(..., description="Region size bound")
    mean_update_us: float = Field(..., description="Mean update time in microseconds")
    p99_update_us: float = Field(..., description="99th percentile update time in microseconds")
    mean_query_us: float = Field(..., description="Mean query time in microseconds")
    failure_rate: float = Field(..., description="Fraction of checked queries outside tolerance")
    mean_query_graph_edges: float = Field(..., description="Mean edge count of assembled query graphs")


class StructureStats(BaseModel):
    """Instrumentation counters of a dynamic structure."""

    updates: int = Field(0, description="Updates applied")
    queries: int = Field(0, description="Queries answered")
    rebuilds: int = Field(0, description="Full rebuilds performed")
    sparsifier_builds: int = Field(0, description="Per-region sparsifier computations")
    last_update_builds: int = Field(0, description="Sparsifier computations of the last update")
    last_query_vertices: int = Field(0, description="Vertices touched by the last assembled query graph")
    last_query_edges: int = Field(0, description="Edges of the last assembled query graph")
    last_build_work: int = Field(0, description="Work units of the last full build")


class ReplayParams(BaseModel):
    """Structure parameters of a replay."""

    r: Optional[int] = Field(None, ge=2, description="Region size bound (default max(4, ceil(n^(2/3))))")
    epsilon: Optional[float] = Field(None, gt=0.0, lt=1.0, description="Accuracy parameter of the eflow and subgraph modes")
    q: Optional[int] = Field(None, ge=1, description="Spanner parameter of the apsp mode")
    strategy: Optional[str] = Field(None, description="Cut sparsifier strategy of the maxflow mode")
    worst_case: bool = Field(False, description="Wrap the structure in the worst-case rebuilding scheduler")
    audit: bool = Field(False, description="Validate the division and planarity after every update")
