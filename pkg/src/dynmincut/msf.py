"""Deterministic dynamic minimum spanning forest with unique-MSF tie-breaking.

The forest is the unique MSF under lexicographic (load, edge-id) order.
Implementation strategy: from-scratch recompute per update (the contract is
observational, not asymptotic); ChangeSets report the forest symmetric
difference.
"""

from __future__ import annotations

import dataclasses


class DisjointSets:
    def __init__(self) -> None:
        self.parent: dict[int, int] = {}

    def add(self, x: int) -> None:
        self.parent.setdefault(x, x)

    def find(self, x: int) -> int:
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


@dataclasses.dataclass(frozen=True)
class ChangeSet:
    entered: frozenset[int]
    left: frozenset[int]

    def __len__(self) -> int:
        return len(self.entered) + len(self.left)


def kruskal(
    vertices: set[int],
    edges: dict[int, tuple[int, int]],
    loads: dict[int, int],
) -> frozenset[int]:
    """Unique MSF edge-id set under (load, edge-id) order."""
    dsu = DisjointSets()
    for v in vertices:
        dsu.add(v)
    forest = []
    for eid in sorted(edges, key=lambda e: (loads.get(e, 0), e)):
        u, v = edges[eid]
        if dsu.union(u, v):
            forest.append(eid)
    return frozenset(forest)


class WeightedForestView:
    """MSF over an explicit edge store with integer loads as weights."""

    def __init__(self) -> None:
        self.vertices: set[int] = set()
        self.edges: dict[int, tuple[int, int]] = {}
        self.loads: dict[int, int] = {}
        self.forest: frozenset[int] = frozenset()

    def add_vertex(self, v: int) -> None:
        self.vertices.add(v)

    def remove_vertex(self, v: int) -> None:
        if any(v in uv for uv in self.edges.values()):
            raise ValueError(f"vertex {v} still has incident edges")
        self.vertices.discard(v)

    def _recompute(self) -> ChangeSet:
        new = kruskal(self.vertices, self.edges, self.loads)
        change = ChangeSet(frozenset(new - self.forest), frozenset(self.forest - new))
        self.forest = new
        return change

    def msf_insert(self, eid: int, u: int, v: int, weight: int = 0) -> ChangeSet:
        if eid in self.edges:
            raise KeyError(f"duplicate edge id {eid}")
        self.vertices.add(u)
        self.vertices.add(v)
        self.edges[eid] = (u, v)
        self.loads[eid] = weight
        return self._recompute()

    def msf_delete(self, eid: int) -> ChangeSet:
        if eid not in self.edges:
            raise KeyError(eid)
        del self.edges[eid]
        del self.loads[eid]
        return self._recompute()

    def msf_reweight(self, eid: int, weight: int) -> ChangeSet:
        if eid not in self.edges:
            raise KeyError(eid)
        self.loads[eid] = weight
        return self._recompute()

    def same_component(self, u: int, v: int) -> bool:
        if u not in self.vertices or v not in self.vertices:
            raise KeyError((u, v))
        dsu = DisjointSets()
        for x in self.vertices:
            dsu.add(x)
        for eid in self.forest:
            a, b = self.edges[eid]
            dsu.union(a, b)
        return dsu.find(u) == dsu.find(v)
