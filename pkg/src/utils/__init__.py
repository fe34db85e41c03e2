"""
Utility functions: seed derivation here; instance generators in
``src.utils.generators`` and benchmarking in ``src.utils.bench``.
"""

from .seeding import derive_seed

__all__ = ['derive_seed']
