"""
Vertex sparsifiers: Schur complements, spectral sampling, terminal cut and distance sparsifiers.
"""

from .spectral import sample_budget, sparsify_spectral, verify_spectral
from .schur import (
    SchurResult,
    approx_schur,
    eliminate_vertex,
    exact_schur,
    min_degree_order,
    schur_complement_matrix,
)
from .cut import (
    CUT_STRATEGIES,
    CutSparsifier,
    contract_exact_strategy,
    cut_profile,
    cut_quality_audit,
    cut_sparsify,
    identity_strategy,
    terminal_bipartitions,
)
from .distance import (
    audit_distance_sparsifier,
    distance_closure,
    distance_sparsify,
    eliminate_nonterminal_dist,
    greedy_spanner,
)

__all__ = [
    'sample_budget',
    'sparsify_spectral',
    'verify_spectral',
    'SchurResult',
    'approx_schur',
    'eliminate_vertex',
    'exact_schur',
    'min_degree_order',
    'schur_complement_matrix',
    'CUT_STRATEGIES',
    'CutSparsifier',
    'contract_exact_strategy',
    'cut_profile',
    'cut_quality_audit',
    'cut_sparsify',
    'identity_strategy',
    'terminal_bipartitions',
    'audit_distance_sparsifier',
    'distance_closure',
    'distance_sparsify',
    'eliminate_nonterminal_dist',
    'greedy_spanner',
]
