"""
Dynamic structures: electrical flow, max flow and shortest paths over r-divisions,
the worst-case rebuilding scheduler, the vertex-activation model and the OMv gadget.
"""

from .base_structure import (
    DeleteBetween,
    DynamicStructure,
    RegionSparsifier,
    UpdateAction,
    planarity_check,
    resolve_action,
)
from .eflow import EFlowStructure, ef_new, ef_query, ef_update
from .maxflow import MaxFlowStructure, mf_new, mf_query, mf_update
from .apsp import APSPStructure, apsp_new, apsp_query, apsp_update
from .scheduler import RebuildScheduler, wc_apply, wc_new, wc_query
from .subgraph import SubgraphEFlow, sg_activate, sg_new, sg_query
from .omv import OMvInstance, omv_answer, omv_build, omv_engine

__all__ = [
    'DeleteBetween',
    'DynamicStructure',
    'RegionSparsifier',
    'UpdateAction',
    'planarity_check',
    'resolve_action',
    'EFlowStructure',
    'ef_new',
    'ef_query',
    'ef_update',
    'MaxFlowStructure',
    'mf_new',
    'mf_query',
    'mf_update',
    'APSPStructure',
    'apsp_new',
    'apsp_query',
    'apsp_update',
    'RebuildScheduler',
    'wc_apply',
    'wc_new',
    'wc_query',
    'SubgraphEFlow',
    'sg_activate',
    'sg_new',
    'sg_query',
    'OMvInstance',
    'omv_answer',
    'omv_build',
    'omv_engine',
]
