"""Named, reproducible random streams.

All randomness in the package flows from a single master seed through
derived streams addressed by a path of names and indices, e.g.
``derive_rng(seed, "predict", fold, "draw", i)``.  Two runs with the same
master seed and the same path always produce the same stream, regardless
of how many other streams were consumed in between.
"""

from __future__ import annotations

import zlib

import numpy as np

_MASK64 = (1 << 64) - 1


def _entropy(master: int, path: tuple) -> list[int]:
    ent = [int(master) & _MASK64]
    for part in path:
        if isinstance(part, str):
            ent.append(zlib.crc32(part.encode("utf-8")))
        else:
            ent.append(int(part) & _MASK64)
    return ent


def derive_rng(master: int, *path) -> np.random.Generator:
    """Generator for the stream addressed by (master, *path)."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(_entropy(master, path))))


def derive_seed(master: int, *path) -> int:
    """64-bit integer seed for the stream addressed by (master, *path)."""
    ss = np.random.SeedSequence(_entropy(master, path))
    return int(ss.generate_state(1, np.uint64)[0])
