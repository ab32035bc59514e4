"""Greedy forest packings: dynamic cascade maintenance and the
distinct-forest computation used by the local cut search.

Forest i of a greedy packing is the unique MSF under the cumulative loads
left by forests 1..i-1 (ties broken by edge id). The forest sequence is a
deterministic function of the normalized load vector, hence eventually
periodic; `distinct_greedy_forests` exploits that to evaluate packings with
very large k exactly.
"""

from __future__ import annotations

from .msf import ChangeSet, kruskal


def greedy_forests(
    vertices: set[int],
    edges: dict[int, tuple[int, int]],
    k: int,
) -> tuple[list[frozenset[int]], dict[int, int]]:
    """First k greedy forests and the final cumulative loads."""
    loads = {e: 0 for e in edges}
    forests = []
    for _ in range(k):
        f = kruskal(vertices, edges, loads)
        for e in f:
            loads[e] += 1
        forests.append(f)
    return forests, loads


def distinct_greedy_forests(
    vertices: set[int],
    edges: dict[int, tuple[int, int]],
    k: int,
    iteration_cap: int = 20000,
) -> list[frozenset[int]]:
    """Distinct forests among the first k greedy forests, exactly.

    Iterates the greedy recurrence with cycle detection on the normalized
    load vector (loads minus their minimum); once a state repeats, the
    remaining forests are a repetition of an already-seen block.
    """
    if not edges or k <= 0:
        return [] if k <= 0 or not edges else [frozenset()]
    eids = sorted(edges)
    loads = {e: 0 for e in eids}
    seen_states: set[tuple[int, ...]] = set()
    distinct: list[frozenset[int]] = []
    seen_forests: set[frozenset[int]] = set()
    for step in range(min(k, iteration_cap)):
        lo = min(loads.values())
        state = tuple(loads[e] - lo for e in eids)
        if state in seen_states:
            return distinct
        seen_states.add(state)
        f = kruskal(vertices, edges, loads)
        if f not in seen_forests:
            seen_forests.add(f)
            distinct.append(f)
        for e in f:
            loads[e] += 1
    return distinct


class ForestPacking:
    """Explicit k-forest greedy packing with per-update cascade repair."""

    def __init__(self, k: int) -> None:
        if k < 1:
            raise ValueError("k must be >= 1")
        self.k = k
        self.vertices: set[int] = set()
        self.edges: dict[int, tuple[int, int]] = {}
        self.forests: list[frozenset[int]] = [frozenset() for _ in range(k)]
        self.final_loads: dict[int, int] = {}

    def _recompute(self) -> list[ChangeSet]:
        new_forests, loads = greedy_forests(self.vertices, self.edges, self.k)
        changes = [
            ChangeSet(frozenset(new - old), frozenset(old - new))
            for old, new in zip(self.forests, new_forests)
        ]
        self.forests = new_forests
        self.final_loads = loads
        return changes

    def add_vertex(self, v: int) -> None:
        self.vertices.add(v)

    def packing_insert(self, eid: int, u: int, v: int) -> list[ChangeSet]:
        if eid in self.edges:
            raise KeyError(f"duplicate edge id {eid}")
        self.vertices.add(u)
        self.vertices.add(v)
        self.edges[eid] = (u, v)
        return self._recompute()

    def packing_delete(self, eid: int) -> list[ChangeSet]:
        if eid not in self.edges:
            raise KeyError(eid)
        del self.edges[eid]
        return self._recompute()

    def loads_after(self, i: int) -> dict[int, int]:
        """Cumulative loads after forests 1..i (from scratch; debug helper)."""
        loads = {e: 0 for e in self.edges}
        for f in self.forests[:i]:
            for e in f:
                loads[e] += 1
        return loads


def respects_count(S: frozenset[int] | set[int], forest: frozenset[int],
                   edges: dict[int, tuple[int, int]]) -> int:
    """Number of forest edges with exactly one endpoint in S."""
    return sum(1 for e in forest if (edges[e][0] in S) != (edges[e][1] in S))
