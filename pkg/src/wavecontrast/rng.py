"""Named substream derivation for reproducible randomness.

Every generator in the package is derived from a master seed plus a
sequence of labels (strings, ints, floats). The labels are hashed, so a
stream's identity depends only on (master_seed, labels) and never on
scheduling order or worker count. Re-deriving the same name yields a
bit-identical stream.
"""

from __future__ import annotations

import hashlib

import numpy as np

_MASK64 = 0xFFFFFFFFFFFFFFFF


def _label_words(labels) -> list[int]:
    digest = hashlib.sha256()
    for label in labels:
        digest.update(repr(label).encode())
        digest.update(b"\x1f")
    return [int(w) for w in np.frombuffer(digest.digest(), dtype=np.uint32)]


def derive_seed(master_seed: int, *labels) -> int:
    """Return a 64-bit integer seed unique to (master_seed, labels)."""
    digest = hashlib.sha256()
    digest.update(str(int(master_seed) & _MASK64).encode())
    digest.update(b"\x1e")
    for label in labels:
        digest.update(repr(label).encode())
        digest.update(b"\x1f")
    return int.from_bytes(digest.digest()[:8], "little")


def substream(master_seed: int, *labels) -> np.random.Generator:
    """Return the generator uniquely identified by (master_seed, labels)."""
    entropy = [int(master_seed) & _MASK64] + _label_words(labels)
    ss = np.random.SeedSequence(entropy)
    return np.random.Generator(np.random.PCG64(ss))
