"""Independent random streams keyed by (master seed, purpose, realization)."""
from __future__ import annotations

import zlib

import numpy as np


def stream(master_seed: int, purpose: str, index: int = 0) -> np.random.Generator:
    """Generator whose draws depend only on its three keys.

    Streams for different purposes or realizations never share state, so
    results do not depend on execution order or on which other streams exist.
    """
    tag = zlib.crc32(purpose.encode("utf-8"))
    seq = np.random.SeedSequence(entropy=int(master_seed), spawn_key=(tag, int(index)))
    return np.random.Generator(np.random.PCG64(seq))
