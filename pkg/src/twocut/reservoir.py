"""Reservoir sampling: keep k uniform items from a prefix of unknown length."""

from __future__ import annotations


def reservoir_sample(stream, k, rng):
    """k items such that after i >= k arrivals each is kept with probability k/i.

    The first k items fill the reservoir; item i > k enters with probability
    k/i and evicts a uniformly random resident.
    """
    if k < 1:
        raise ValueError("reservoir size must be >= 1")
    kept = []
    for i, item in enumerate(stream, start=1):
        if i <= k:
            kept.append(item)
        elif rng.random() < k / i:
            kept[int(rng.integers(0, k))] = item
    return kept
