"""Per-vertex minimum local cuts over a collection of mirror clusters.

For every vertex v of every registered mirror cluster the store keeps one
minimum proper local cut: a connected S with v in S, S a strict subset of
the cluster, z (the outside super-vertex) not in S, boundary between 1 and
lam_max, volume at most nu. Cut records are shared between the vertices
they cover (owner lists) and a lazy min-heap exposes the global cheapest
stored cut in O(log) time.

Batch updates apply all edge changes to the per-cluster local-cut hosts
first, then repair stored cuts: insertions crossing a stored cut bump its
value (owners are reprocessed, records beyond lam_max dropped); deletions
crossing a cut lower its value; deletions inside a cut can disconnect it
(checked directly, record dropped); endpoints of deleted edges are always
reprocessed. Ties keep the incumbent cut; a vertex acquiring a cut afresh
gets the lexicographically smallest canonical set among the minima.
"""

from __future__ import annotations

import dataclasses
import heapq
from typing import Iterable, Optional

from .localkcut import LocalKCutDS
from .params import Params

CutKey = tuple[int, frozenset[int]]  # (cluster key, members)


@dataclasses.dataclass
class CutRecord:
    members: frozenset[int]
    value: int
    owners: set[int]


class MirrorCutStore:
    def __init__(self, params: Params) -> None:
        self.params = params
        self.hosts: dict[int, LocalKCutDS] = {}
        self.z_of: dict[int, Optional[int]] = {}
        self.cluster_of: dict[int, int] = {}  # vertex -> cluster key
        self.records: dict[CutKey, CutRecord] = {}
        self.stored: dict[int, Optional[frozenset[int]]] = {}  # vertex -> members
        self.member_index: dict[int, set[frozenset[int]]] = {}
        self._heap: list[tuple[int, tuple[int, ...], int]] = []

    # --- cluster lifecycle ---------------------------------------------------

    def add_cluster(
        self,
        key: int,
        vertices: Iterable[int],
        edges: dict[int, tuple[int, int]],
        z: Optional[int],
    ) -> None:
        """Register a mirror cluster and compute all its stored cuts."""
        if key in self.hosts:
            raise KeyError(f"cluster {key} already registered")
        lkc = LocalKCutDS(self.params)
        verts = sorted(vertices)
        for x in verts:
            lkc.add_vertex(x)
        for eid in sorted(edges):
            u, v = edges[eid]
            lkc.lkc_insert(eid, u, v)
        self.hosts[key] = lkc
        self.z_of[key] = z
        for x in verts:
            if x == z:
                continue
            if x in self.cluster_of:
                raise KeyError(f"vertex {x} already owned by a cluster")
            self.cluster_of[x] = key
            self.stored[x] = None
            self.member_index[x] = set()
        for x in verts:
            if x != z:
                self.mc_process_vertex(x)

    def remove_cluster(self, key: int) -> None:
        lkc = self.hosts.pop(key)
        z = self.z_of.pop(key)
        for x in list(lkc.adj):
            if x == z:
                continue
            for members in list(self.member_index[x]):
                self._drop_record(key, members)
            del self.cluster_of[x]
            del self.stored[x]
            del self.member_index[x]

    # --- record plumbing --------------------------------------------------------

    def _drop_record(self, key: int, members: frozenset[int]) -> set[int]:
        """Delete a cut record; returns its former owners."""
        rec = self.records.pop((key, members), None)
        if rec is None:
            return set()
        for x in members:
            self.member_index[x].discard(members)
        for x in rec.owners:
            if self.stored.get(x) == members:
                self.stored[x] = None
        return rec.owners

    def _assign(self, key: int, v: int, members: frozenset[int], value: int) -> None:
        old = self.stored[v]
        if old is not None and old != members:
            rec = self.records[(key, old)]
            rec.owners.discard(v)
            if not rec.owners:
                self._drop_record(key, old)
        self.stored[v] = members
        ck = (key, members)
        if ck not in self.records:
            self.records[ck] = CutRecord(members, value, set())
            for x in members:
                self.member_index[x].add(members)
            heapq.heappush(self._heap, (value, tuple(sorted(members)), key))
        self.records[ck].owners.add(v)

    def _release(self, key: int, v: int) -> None:
        old = self.stored[v]
        if old is None:
            return
        rec = self.records[(key, old)]
        rec.owners.discard(v)
        self.stored[v] = None
        if not rec.owners:
            self._drop_record(key, old)

    def _connected(self, key: int, members: frozenset[int]) -> bool:
        adj = self.hosts[key].adj
        start = next(iter(members))
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y in members and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == len(members)

    # --- the public surface --------------------------------------------------------

    def mc_process_vertex(self, v: int) -> None:
        """Recompute candidate cuts at v and improve members' stored cuts."""
        key = self.cluster_of[v]
        lkc = self.hosts[key]
        z = self.z_of[key]
        cluster_vertices = frozenset(x for x in lkc.adj if x != z)
        candidates = []
        for S in lkc.lkc_query(v):
            if z is not None and z in S:
                continue
            if S == cluster_vertices:
                continue
            value = sum(
                1 for e, (a, b) in lkc.edges.items() if (a in S) != (b in S)
            )
            if 1 <= value <= self.params.lam_max:
                candidates.append((value, tuple(sorted(S)), S))
        for value, _, S in sorted(candidates):
            for u in S:
                cur = self.stored[u]
                if cur is None or self.records[(key, cur)].value > value:
                    self._assign(key, u, S, value)

    def mc_batch_update(
        self,
        inserts: list[tuple[int, int, int, int]],  # (cluster key, eid, u, v)
        deletes: list[tuple[int, int]],  # (cluster key, eid)
    ) -> None:
        """Apply a batch of mirror-graph edge changes, then repair cuts.

        Deletes are applied before inserts, so an edge id may not appear in
        both lists; callers must cancel insert-then-delete pairs upstream.
        """
        marked: set[int] = set()
        delete_endpoints: list[tuple[int, int, int]] = []
        for key, eid in deletes:
            u, v = self.hosts[key].edges[eid]
            delete_endpoints.append((key, u, v))
            self.hosts[key].lkc_delete(eid)
        for key, eid, u, v in inserts:
            self.hosts[key].lkc_insert(eid, u, v)
        # deletions: adjust or invalidate affected stored cuts
        for key, u, v in delete_endpoints:
            z = self.z_of[key]
            for x in (u, v):
                if x != z and x in self.cluster_of:
                    marked.add(x)
            crossing = {S for x in (u, v) if x != z and x in self.member_index
                        for S in self.member_index[x]
                        if (u in S) != (v in S)}
            inside = set()
            if u != z and v != z and u in self.member_index:
                inside = {S for S in self.member_index[u] if v in S}
            for S in crossing:
                rec = self.records[(key, S)]
                rec.value -= 1
                if rec.value < 1:
                    marked |= self._drop_record(key, S)
                else:
                    heapq.heappush(self._heap, (rec.value, tuple(sorted(S)), key))
            for S in inside:
                if (key, S) in self.records and not self._connected(key, S):
                    marked |= self._drop_record(key, S)
        # insertions: bump crossed cuts, reprocess their owners; the
        # endpoints themselves are reprocessed too (an insertion can turn a
        # zero-boundary set proper when the host was disconnected)
        for key, _, u, v in inserts:
            z = self.z_of[key]
            for x in (u, v):
                if x != z and x in self.cluster_of:
                    marked.add(x)
            crossing = {S for x in (u, v) if x != z and x in self.member_index
                        for S in self.member_index[x]
                        if (u in S) != (v in S)}
            for S in crossing:
                rec = self.records[(key, S)]
                rec.value += 1
                marked |= set(rec.owners)
                if rec.value > self.params.lam_max:
                    marked |= self._drop_record(key, S)
                else:
                    heapq.heappush(self._heap, (rec.value, tuple(sorted(S)), key))
        for v in sorted(marked):
            if v in self.cluster_of:
                self.mc_process_vertex(v)

    def mc_min(self) -> Optional[tuple[int, int, tuple[int, ...]]]:
        """(value, one owner, sorted members) of the cheapest stored cut."""
        while self._heap:
            value, members_t, key = self._heap[0]
            rec = self.records.get((key, frozenset(members_t)))
            if rec is None or rec.value != value or not rec.owners:
                heapq.heappop(self._heap)
                continue
            return value, min(rec.owners), members_t
        return None

    # --- audits -----------------------------------------------------------------

    def audit(self) -> list[str]:
        """Exactness and reference-hygiene audit (exhaustive; desk scale)."""
        problems: list[str] = []
        for (key, members), rec in self.records.items():
            if rec.members != members:
                problems.append(f"record key/member mismatch in cluster {key}")
            if not rec.owners:
                problems.append(f"record {sorted(members)} has no owners")
            for x in members:
                if members not in self.member_index.get(x, ()):
                    problems.append(f"missing member index {x} -> {sorted(members)}")
            for x in rec.owners:
                if self.stored.get(x) != members:
                    problems.append(f"owner {x} does not point at {sorted(members)}")
        for v, key in self.cluster_of.items():
            lkc = self.hosts[key]
            z = self.z_of[key]
            cluster_vertices = frozenset(x for x in lkc.adj if x != z)
            best: Optional[int] = None
            for S in lkc.lkc_query(v):
                if (z is not None and z in S) or S == cluster_vertices:
                    continue
                value = sum(
                    1 for e, (a, b) in lkc.edges.items() if (a in S) != (b in S)
                )
                if 1 <= value <= self.params.lam_max:
                    best = value if best is None else min(best, value)
            stored = self.stored[v]
            have = None if stored is None else self.records[(key, stored)].value
            if best != have:
                problems.append(
                    f"vertex {v}: stored value {have}, oracle minimum {best}"
                )
        return problems
