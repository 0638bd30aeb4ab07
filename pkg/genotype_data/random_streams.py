"""Named random streams derived from a single seed.

Every consumer of randomness asks for a stream by name (for example
``derive_rng(seed, "phenotype", "scenario-c", 3)``). The stream only depends on
the seed and the names, never on call order, so work can be split across
threads without changing any result.
"""
import hashlib
from typing import Union

import numpy as np

StreamKey = Union[str, int]


def _key_to_int(key: StreamKey) -> int:
    digest = hashlib.sha256(str(key).encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little")


def derive_seed_sequence(seed: int, *names: StreamKey) -> np.random.SeedSequence:
    """Build the seed sequence for the stream ``names`` under ``seed``."""
    return np.random.SeedSequence(
        entropy=int(seed), spawn_key=tuple(_key_to_int(name) for name in names)
    )


def derive_rng(seed: int, *names: StreamKey) -> np.random.Generator:
    """Return an independent generator for the named stream."""
    return np.random.default_rng(derive_seed_sequence(seed, *names))


def derive_int_seed(seed: int, *names: StreamKey) -> int:
    """Return a 32-bit integer seed for APIs that take ``random_state``."""
    state = derive_seed_sequence(seed, *names).generate_state(1, dtype=np.uint32)
    return int(state[0])
