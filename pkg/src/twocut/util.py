"""Small shared helpers: integer logs, disjoint sets, seeded generator trees."""

from __future__ import annotations

import numpy as np


def floor_log2(x: int) -> int:
    if x < 1:
        raise ValueError("floor_log2 needs x >= 1")
    return x.bit_length() - 1


def ceil_log2(x: int) -> int:
    if x < 1:
        raise ValueError("ceil_log2 needs x >= 1")
    return (x - 1).bit_length()


class DisjointSets:
    """Union-find with path halving and union by size."""

    def __init__(self, n):
        self.parent = list(range(n))
        self.size = [1] * n
        self.count = n

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.count -= 1
        return True


def rng_for(seed, *tags) -> np.random.Generator:
    """Deterministic child generator for (seed, tags).

    Every randomized stage draws from its own tagged stream so that adding or
    removing one stage never shifts the randomness seen by another.
    """
    key = tuple(int(t) & 0xFFFFFFFF for t in tags)
    return np.random.default_rng(np.random.SeedSequence(entropy=int(seed) & (2**63 - 1), spawn_key=key))
