"""Shared constructive graph generators (no rejection sampling)."""

from __future__ import annotations

import random


def cycle_plus_chords(n: int, m: int, seed: int) -> list[tuple[int, int]]:
    """Connected multigraph: a Hamiltonian cycle plus random chords."""
    rng = random.Random(seed)
    edges = [(i, (i + 1) % n) for i in range(n)]
    while len(edges) < m:
        u, v = rng.sample(range(n), 2)
        edges.append((min(u, v), max(u, v)))
    return edges


def dense_sides_with_crossing(
    n: int, lam: int, seed: int
) -> tuple[list[tuple[int, int]], list[int], list[int]]:
    """Two well-connected halves joined by exactly lam crossing edges.

    Each half gets a cycle plus enough chords that its internal cuts
    comfortably exceed lam. Returns (edges, left, right).
    """
    rng = random.Random(seed)
    left = list(range(n // 2))
    right = list(range(n // 2, n))
    edges: list[tuple[int, int]] = []
    for side in (left, right):
        k = len(side)
        for i in range(k):
            u, v = side[i], side[(i + 1) % k]
            edges.append((min(u, v), max(u, v)))
        chords = max(0, (lam + 2) * k // 2 - k)
        for _ in range(chords):
            u, v = rng.sample(side, 2)
            edges.append((min(u, v), max(u, v)))
    for _ in range(lam):
        u, v = rng.choice(left), rng.choice(right)
        edges.append((u, v))
    return edges, left, right
