"""Deterministic random streams derived from a master seed and purpose labels.

Every stochastic component of the package draws from a PCG64 generator that
is a pure function of ``(master_seed, labels...)``.  Consumers that must not
share state (instance generation, example drawing, collision-pair selection,
parallel trials) simply use distinct labels, so execution order and thread
count can never change results.
"""

from __future__ import annotations

import hashlib

import numpy as np

_MASK64 = (1 << 64) - 1


def stream(master_seed: int, *labels) -> np.random.Generator:
    """Return the PCG64 stream keyed by ``(master_seed, labels...)``.

    The same arguments always produce an identical stream; any change to a
    label yields an independent one.  Labels may be ints or strings.
    """
    h = hashlib.blake2b(digest_size=16)
    for label in labels:
        h.update(repr(label).encode())
        h.update(b"\x1f")
    entropy = [int(master_seed) & _MASK64, int.from_bytes(h.digest(), "little")]
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))


def as_generator(random_state) -> np.random.Generator:
    """Coerce ``None | int | Generator`` into a numpy Generator."""
    if random_state is None:
        return np.random.default_rng()
    if isinstance(random_state, np.random.Generator):
        return random_state
    return stream(int(random_state), "random-state")
