"""Deterministic seed derivation.

Every random stream in the package is derived from an integer master seed by
a fixed, language-neutral 64-bit hash so experiments reproduce bit-for-bit:

    seed = first 8 bytes (big-endian) of SHA-256("graphbandit:<master>/<label>/<label>...")

Labels are stringified with ``str``; replicate indices, substream names, and
check names are all passed through this single function.
"""

from __future__ import annotations

import hashlib

import numpy as np

_NAMESPACE = "graphbandit"


def derive_seed(master: int, *labels) -> int:
    """64-bit seed for the substream identified by `labels` under `master`."""
    h = hashlib.sha256()
    h.update(f"{_NAMESPACE}:{master}".encode())
    for label in labels:
        h.update(b"/")
        h.update(str(label).encode())
    return int.from_bytes(h.digest()[:8], "big")


def make_rng(seed: int) -> np.random.Generator:
    """PCG64 generator for the given seed."""
    return np.random.Generator(np.random.PCG64(seed))
