"""Deterministic RNG derivation.

Sub-seeds are hashes of (master seed, label path), so trials can run in any
order or in parallel and still reproduce byte-identical results.
"""

from __future__ import annotations

import hashlib
import random


def derive_seed(master: int, *labels) -> int:
    text = ":".join([str(master)] + [str(x) for x in labels])
    digest = hashlib.sha256(text.encode()).digest()
    return int.from_bytes(digest[:8], "big")


def derive_rng(master: int, *labels) -> random.Random:
    return random.Random(derive_seed(master, *labels))
