"""Seeded random streams.

Every randomized operation draws from its own named stream derived from the
user seed, so adding draws in one place never shifts another.
"""

from __future__ import annotations

import zlib

import numpy as np

SEED_MASK = (1 << 64) - 1


def stream(seed: int, name: str) -> np.random.Generator:
    if not 0 <= seed <= SEED_MASK:
        raise ValueError(f"seed {seed} outside the unsigned 64-bit range")
    key = zlib.crc32(name.encode("utf-8"))
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed & 0xFFFFFFFF, seed >> 32, key])))
