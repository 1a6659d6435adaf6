"""Deterministic sampling: a splitmix-style 64-bit mixer.

The i-th sample drawn from seed s is mix64(s + (i+1) * GOLDEN), with the
standard finalizer constants, so a sampled run is reproducible from the
seed alone, independent of iteration order or partitioning:

    GOLDEN = 0x9E3779B97F4A7C15
    M1     = 0xBF58476D1CE4E5B9
    M2     = 0x94D049BB133111EB
"""

from __future__ import annotations

MASK = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
M1 = 0xBF58476D1CE4E5B9
M2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    z &= MASK
    z = (z ^ (z >> 30)) * M1 & MASK
    z = (z ^ (z >> 27)) * M2 & MASK
    return z ^ (z >> 31)


def sample_at(seed: int, i: int) -> int:
    """The i-th 64-bit sample of the stream with the given seed."""
    return mix64((seed + (i + 1) * GOLDEN) & MASK)


def mix_stream(seed: int):
    """Infinite generator of the sample stream."""
    i = 0
    while True:
        yield sample_at(seed, i)
        i += 1


def sample_indices(seed: int, count: int, size: int) -> list[int]:
    """`count` indices below `size`, from the seeded stream."""
    if size <= 0:
        return []
    return [sample_at(seed, i) % size for i in range(count)]


def sample_distinct_pairs(seed: int, count: int, size: int):
    """`count` pairs (i, j), i != j, both below `size`."""
    out = []
    i = 0
    while len(out) < count:
        a = sample_at(seed, 2 * i) % size
        b = sample_at(seed, 2 * i + 1) % size
        i += 1
        if a != b:
            out.append((a, b))
    return out
