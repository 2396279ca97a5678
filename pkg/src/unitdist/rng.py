"""Deterministic named random streams.

Every source of randomness in the pipeline derives from the single config
seed through a named stream, so reports are reproducible bit for bit:

    rotation  -> stream(seed, "rotation")
    bisection -> stream(seed, "bisect", level, round)
    generator -> stream(seed, "generate", kind)
"""

from __future__ import annotations

import hashlib
import random


def stream_seed(seed: int, *names) -> int:
    tag = f"{seed}/" + "/".join(str(n) for n in names)
    digest = hashlib.sha256(tag.encode()).digest()
    return int.from_bytes(digest[:8], "big")


def stream(seed: int, *names) -> random.Random:
    return random.Random(stream_seed(seed, *names))
