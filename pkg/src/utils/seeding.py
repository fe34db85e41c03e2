"""
Deterministic seed derivation for per-region and per-replay randomness.
"""

import hashlib


def derive_seed(master: int, *parts: int) -> int:
    """Stable 63-bit seed from a master seed and integer labels (region id, replay index)."""
    digest = hashlib.blake2b(digest_size=8)
    for value in (master, *parts):
        digest.update(int(value).to_bytes(16, "little", signed=True))
    return int.from_bytes(digest.digest(), "little") >> 1
