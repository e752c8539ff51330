"""
Named random streams.

Every generator draws from ``numpy.random.Philox`` (a counter-based bit
generator) keyed by ``SeedSequence([seed, crc32(name)])``. A stream is fully
determined by (seed, name), so two components never share draws and adding a
new stream does not shift existing ones.
"""

import zlib

import numpy as np


def stream(seed: int, *name_parts: object) -> np.random.Generator:
    """Return the random stream for ``seed`` and a dotted name built from ``name_parts``."""
    if seed < 0:
        raise ValueError(f"seed must be non-negative, got {seed}")
    name = ".".join(str(part) for part in name_parts)
    key = zlib.crc32(name.encode("utf-8"))
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, key])))
