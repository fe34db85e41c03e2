"""
From-scratch oracles and the replay comparator.
"""

from .oracles import oracle_cut_profile, oracle_distance, oracle_energy, oracle_maxflow
from .replay import (
    REPLAY_MODES,
    default_region_size,
    query_ratio,
    replay_compare,
    replay_job,
    replay_many,
    report_lines,
    within_tolerance,
)

__all__ = [
    'oracle_cut_profile',
    'oracle_distance',
    'oracle_energy',
    'oracle_maxflow',
    'REPLAY_MODES',
    'default_region_size',
    'query_ratio',
    'replay_compare',
    'replay_job',
    'replay_many',
    'report_lines',
    'within_tolerance',
]
