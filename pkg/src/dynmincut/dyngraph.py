"""Dynamic unweighted multigraph with a two-level cluster partition.

Edges carry a label from {intracluster, intercluster, fragmented}. The
labels define the partitions: P2 clusters are the connected components of
the intracluster-edge subgraph, P1 clusters those of the intracluster-plus-
fragmented subgraph, so P2 always refines P1. Cluster records cache member
sets, boundary edge-id sets and internal edge counts; merges keep the
larger record and splits rebuild the smaller side from scratch, so the
work charged to partition maintenance is proportional to the smaller
side's volume (tracked by a counter).

Boundary-edge-id sets are the ground truth; the closed-form split
arithmetic (boundary and volume of a cluster from the two sides and the
crossing count) is asserted against them in debug mode.
"""

from __future__ import annotations

import dataclasses
from fractions import Fraction
from typing import Iterable, Optional

from .msf import WeightedForestView
from .params import Params, lambda_range  # re-exported parameter bundle

__all__ = [
    "Params",
    "lambda_range",
    "Cut",
    "ClusterRecord",
    "DynMultiGraph",
    "INTRA",
    "INTER",
    "FRAGMENTED",
]

INTRA = "intracluster"
INTER = "intercluster"
FRAGMENTED = "fragmented"
_LABELS = (INTRA, INTER, FRAGMENTED)

WELL = "well-connected"
POORLY = "poorly-connected"
FRAG_CLASS = "fragmented"


@dataclasses.dataclass(frozen=True)
class Cut:
    """A candidate vertex set inside a host cluster, with cached sizes."""

    vertices: frozenset[int]
    volume: int
    internal: int  # w(S, C \ S)
    external: int  # w(S, V \ C)
    cluster: int


@dataclasses.dataclass
class ClusterRecord:
    cid: int
    tag: str  # "P1" or "P2"
    members: set[int]
    boundary_eids: set[int]
    internal_edges: int
    classification: str = POORLY

    @property
    def boundary(self) -> int:
        return len(self.boundary_eids)

    @property
    def volume(self) -> int:
        """Half-edge count of members: each internal edge twice + boundary."""
        return 2 * self.internal_edges + self.boundary


@dataclasses.dataclass
class GraphCounters:
    merges: int = 0
    splits: int = 0
    split_half_edges: int = 0  # work charged to smaller-side rebuilds


class DynMultiGraph:
    """Label-partitioned dynamic multigraph (single writer)."""

    def __init__(self, vertices: Iterable[int] = ()) -> None:
        self.edges: dict[int, tuple[int, int]] = {}
        self.labels: dict[int, str] = {}
        self.adj: dict[int, set[int]] = {}  # vertex -> incident edge ids
        self.checked: dict[int, bool] = {}
        self.inner_volume: dict[int, int] = {}  # contracted-vertex annotation
        self.records: dict[int, ClusterRecord] = {}
        self.p1_of: dict[int, int] = {}
        self.p2_of: dict[int, int] = {}
        self._next_eid = 0
        self._next_cid = 0
        self.counters = GraphCounters()
        # connectivity-under-relabeling oracles, one per partition level
        self._p1_forest = WeightedForestView()
        self._p2_forest = WeightedForestView()
        for v in vertices:
            self.add_vertex(v)

    # --- vertices -----------------------------------------------------------

    def add_vertex(self, v: int, inner_volume: int = 0) -> None:
        if v in self.adj:
            raise ValueError(f"vertex {v} already present")
        self.adj[v] = set()
        self.checked[v] = False
        self.inner_volume[v] = inner_volume
        self._p1_forest.add_vertex(v)
        self._p2_forest.add_vertex(v)
        for tag, index in (("P1", self.p1_of), ("P2", self.p2_of)):
            cid = self._fresh_cid()
            self.records[cid] = ClusterRecord(cid, tag, {v}, set(), 0)
            index[v] = cid

    def remove_vertex(self, v: int) -> None:
        if self.adj.get(v):
            raise ValueError(f"vertex {v} still has incident edges")
        if v not in self.adj:
            raise KeyError(v)
        for index in (self.p1_of, self.p2_of):
            cid = index.pop(v)
            rec = self.records[cid]
            if rec.members != {v}:
                raise AssertionError(f"isolated vertex {v} not a singleton cluster")
            del self.records[cid]
        del self.adj[v]
        del self.checked[v]
        del self.inner_volume[v]
        self._p1_forest.remove_vertex(v)
        self._p2_forest.remove_vertex(v)

    @property
    def vertices(self) -> set[int]:
        return set(self.adj)

    def _fresh_cid(self) -> int:
        cid = self._next_cid
        self._next_cid += 1
        return cid

    # --- per-vertex flags -----------------------------------------------------

    def mark_checked(self, v: int) -> None:
        self.checked[v] = True

    def mark_unchecked(self, v: int) -> None:
        self.checked[v] = False

    # --- cluster access ---------------------------------------------------------

    def cluster(self, cid: int) -> ClusterRecord:
        return self.records[cid]

    def clusters(self, tag: str) -> list[ClusterRecord]:
        return sorted(
            (r for r in self.records.values() if r.tag == tag),
            key=lambda r: r.cid,
        )

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def endpoints(self, eid: int) -> tuple[int, int]:
        return self.edges[eid]

    def _index_for(self, tag: str) -> dict[int, int]:
        return self.p1_of if tag == "P1" else self.p2_of

    def _in_level(self, label: str, tag: str) -> bool:
        """Whether an edge with this label is internal to the partition level."""
        if tag == "P2":
            return label == INTRA
        return label in (INTRA, FRAGMENTED)

    # --- edge updates ---------------------------------------------------------

    def insert_edge(
        self, u: int, v: int, label: str, eid: Optional[int] = None
    ) -> int:
        if u not in self.adj or v not in self.adj:
            raise KeyError((u, v))
        if u == v:
            raise ValueError("self-loops are not allowed")
        if label not in _LABELS:
            raise ValueError(f"unknown label {label!r}")
        if eid is None:
            eid = self._next_eid
        if eid in self.edges:
            raise KeyError(f"duplicate edge id {eid}")
        self._next_eid = max(self._next_eid, eid) + 1
        self.edges[eid] = (u, v)
        self.labels[eid] = label
        self.adj[u].add(eid)
        self.adj[v].add(eid)
        if self._in_level(label, "P1"):
            self._p1_forest.msf_insert(eid, u, v)
        if self._in_level(label, "P2"):
            self._p2_forest.msf_insert(eid, u, v)
        for tag in ("P1", "P2"):
            self._account_insert(eid, u, v, label, tag)
        return eid

    def _account_insert(self, eid: int, u: int, v: int, label: str, tag: str) -> None:
        index = self._index_for(tag)
        cu, cv = index[u], index[v]
        internal_label = self._in_level(label, tag)
        if cu == cv:
            rec = self.records[cu]
            rec.internal_edges += 1
            return
        if not internal_label:
            self.records[cu].boundary_eids.add(eid)
            self.records[cv].boundary_eids.add(eid)
            return
        # merge: keep the larger record, absorb the smaller
        big, small = self.records[cu], self.records[cv]
        if small.volume > big.volume:
            big, small = small, big
        self.counters.merges += 1
        self.counters.split_half_edges += max(1, small.volume)
        for x in small.members:
            index[x] = big.cid
        big.members |= small.members
        # edges between the two former clusters become internal
        crossing = big.boundary_eids & small.boundary_eids
        big.internal_edges += small.internal_edges + len(crossing) + 1
        big.boundary_eids = (big.boundary_eids | small.boundary_eids) - crossing
        del self.records[small.cid]

    def delete_edge(self, eid: int) -> None:
        if eid not in self.edges:
            raise KeyError(eid)
        u, v = self.edges[eid]
        label = self.labels[eid]
        del self.edges[eid]
        del self.labels[eid]
        self.adj[u].discard(eid)
        self.adj[v].discard(eid)
        if self._in_level(label, "P1"):
            self._p1_forest.msf_delete(eid)
        if self._in_level(label, "P2"):
            self._p2_forest.msf_delete(eid)
        for tag in ("P1", "P2"):
            self._account_delete(eid, u, v, label, tag)

    def _account_delete(self, eid: int, u: int, v: int, label: str, tag: str) -> None:
        index = self._index_for(tag)
        cu, cv = index[u], index[v]
        if not self._in_level(label, tag):
            if cu == cv:
                self.records[cu].internal_edges -= 1
            else:
                self.records[cu].boundary_eids.discard(eid)
                self.records[cv].boundary_eids.discard(eid)
            return
        rec = self.records[cu]
        rec.internal_edges -= 1
        forest = self._p1_forest if tag == "P1" else self._p2_forest
        if not forest.same_component(u, v):
            self._split_record(rec, tag, u, v)

    # --- split machinery --------------------------------------------------------

    def _level_neighbors(self, x: int, tag: str) -> Iterable[int]:
        for eid in self.adj[x]:
            if self._in_level(self.labels[eid], tag):
                a, b = self.edges[eid]
                yield b if a == x else a

    def _lockstep_sides(self, u: int, v: int, tag: str) -> set[int]:
        """Smaller of the two components around u and v after a level split.

        Explores both sides in lockstep so the cost is proportional to the
        smaller side (ties: the side of u).
        """
        fronts = [[u], [v]]
        seen = [{u}, {v}]
        while True:
            for side in (0, 1):
                if not fronts[side]:
                    return seen[side]
                nxt: list[int] = []
                for x in fronts[side]:
                    for y in self._level_neighbors(x, tag):
                        if y not in seen[side]:
                            seen[side].add(y)
                            nxt.append(y)
                fronts[side] = nxt

    def _split_record(self, rec: ClusterRecord, tag: str, u: int, v: int) -> int:
        """Split rec into the component of the smaller of u/v sides; returns new cid."""
        index = self._index_for(tag)
        small = self._lockstep_sides(u, v, tag)
        self.counters.splits += 1
        new_cid = self._fresh_cid()
        # rebuild the smaller record from scratch
        s_boundary: set[int] = set()
        s_internal = 0
        touched = 0
        for x in small:
            for eid in self.adj[x]:
                a, b = self.edges[eid]
                other = b if a == x else a
                touched += 1
                if other in small:
                    if x < other:  # each internal edge visited from both ends
                        s_internal += 1
                else:
                    s_boundary.add(eid)
        self.counters.split_half_edges += touched
        # larger side updated in place: remove members, drop boundary edges
        # now owned by the small side, add the new crossing edges
        crossing = 0
        for x in small:
            for eid in self.adj[x]:
                a, b = self.edges[eid]
                other = b if a == x else a
                if other in small:
                    continue
                if index[other] == rec.cid:
                    rec.boundary_eids.add(eid)
                    crossing += 1
                else:
                    rec.boundary_eids.discard(eid)
        old_internal = rec.internal_edges
        rec.members -= small
        rec.internal_edges -= s_internal + crossing
        new_rec = ClusterRecord(new_cid, tag, set(small), s_boundary, s_internal,
                                rec.classification)
        self.records[new_cid] = new_rec
        for x in small:
            index[x] = new_cid
        # closed-form cross-check: crossing edges sit in both sides' boundaries
        assert old_internal == rec.internal_edges + new_rec.internal_edges + crossing
        return new_cid

    def split_cluster(self, relabels: list[tuple[int, str]]) -> list[int]:
        """Apply label changes that refine the partitions; return new cluster ids.

        A relabel may only move an edge "outward" (intracluster to fragmented
        or intercluster, fragmented to intercluster); anything that would
        merge clusters at either level is rejected.
        """
        order = {INTRA: 0, FRAGMENTED: 1, INTER: 2}
        for eid, new_label in relabels:
            if eid not in self.edges:
                raise KeyError(eid)
            if new_label not in _LABELS:
                raise ValueError(f"unknown label {new_label!r}")
            if order[new_label] < order[self.labels[eid]]:
                raise ValueError(
                    f"relabel of edge {eid} to {new_label!r} would merge clusters"
                )
        new_cids: list[int] = []
        for eid, new_label in relabels:
            old_label = self.labels[eid]
            if new_label == old_label:
                continue
            u, v = self.edges[eid]
            self.labels[eid] = new_label
            for tag, forest in (("P1", self._p1_forest), ("P2", self._p2_forest)):
                was_in = self._in_level(old_label, tag)
                now_in = self._in_level(new_label, tag)
                if was_in == now_in:
                    continue
                # refinement only: edge leaves the level; it stays in the
                # graph, so the record's internal count is unchanged unless
                # the cluster actually splits
                forest.msf_delete(eid)
                index = self._index_for(tag)
                rec = self.records[index[u]]
                if not forest.same_component(u, v):
                    new_cids.append(self._split_record(rec, tag, u, v))
        return new_cids

    def merge_fragmented(self, p1_cid: int) -> list[int]:
        """Relabel every fragmented edge inside a P1 cluster as intracluster.

        The inverse of fragmentation: P1 is untouched (both labels are
        internal to it) while the P2 clusters joined by the edges merge.
        Returns the relabeled edge ids.
        """
        rec = self.records[p1_cid]
        if rec.tag != "P1":
            raise ValueError("fragmented labels live inside P1 clusters")
        eids = sorted(
            eid
            for x in rec.members
            for eid in self.adj[x]
            if self.labels[eid] == FRAGMENTED
        )
        for eid in eids:
            if self.labels[eid] != FRAGMENTED:
                continue  # seen from the other endpoint already
            u, v = self.edges[eid]
            self._account_delete(eid, u, v, FRAGMENTED, "P2")
            self.labels[eid] = INTRA
            self._p2_forest.msf_insert(eid, u, v)
            self._account_insert(eid, u, v, INTRA, "P2")
        return sorted(set(eids))

    # --- queries ---------------------------------------------------------------

    def cut_of(self, S: Iterable[int], cid: int) -> Cut:
        """Build a Cut record for S inside cluster cid (cost ~ vol(S))."""
        rec = self.records[cid]
        Sset = frozenset(S)
        if not Sset or not Sset < frozenset(rec.members):
            raise ValueError("cut must be a nonempty strict subset of its cluster")
        vol = internal = external = 0
        for x in Sset:
            for eid in self.adj[x]:
                a, b = self.edges[eid]
                other = b if a == x else a
                vol += 1
                if other in Sset:
                    continue
                if other in rec.members:
                    internal += 1
                else:
                    external += 1
        return Cut(Sset, vol, internal, external, cid)

    def is_boundary_sparse(self, S: Cut | Iterable[int], cid: int,
                           delta: Fraction) -> bool:
        """(1-delta)-boundary sparsity of S in cluster cid."""
        cut = S if isinstance(S, Cut) else self.cut_of(S, cid)
        rec = self.records[cid]
        w_in = cut.internal
        w_s_out = cut.external
        w_rest_out = rec.boundary - w_s_out
        return w_in < (1 - delta) * min(w_s_out, w_rest_out)

    # --- derived graphs --------------------------------------------------------

    def mirror_cluster(self, cid: int, z: int = -1) -> "DynMultiGraph":
        """Contraction of everything outside P1 cluster cid into one vertex z.

        Internal edge e keeps id 2e; boundary edge e becomes (inside, z) with
        id 2e+1 (so orig = mirror_id // 2). With no boundary edges z is
        omitted, keeping the mirror connected iff the cluster is.
        """
        rec = self.records[cid]
        if rec.tag != "P1":
            raise ValueError("mirror clusters are defined for P1 clusters")
        g = DynMultiGraph(sorted(rec.members))
        if rec.boundary_eids:
            g.add_vertex(z)
        for x in sorted(rec.members):
            for eid in sorted(self.adj[x]):
                a, b = self.edges[eid]
                other = b if a == x else a
                if other in rec.members:
                    if x == min(a, b):
                        g.insert_edge(a, b, INTRA, eid=2 * eid)
                else:
                    g.insert_edge(x, z, INTRA, eid=2 * eid + 1)
        return g

    def contracted_graph(self) -> "DynMultiGraph":
        """G/P2: one vertex per P2 cluster, one edge per non-intracluster edge.

        Vertex ids are the P2 cluster ids, annotated with the cluster's
        internal half-edge volume; edge ids and labels are preserved.
        """
        g = DynMultiGraph()
        for rec in self.clusters("P2"):
            g.add_vertex(rec.cid, inner_volume=2 * rec.internal_edges)
        for eid in sorted(self.edges):
            if self.labels[eid] == INTRA:
                continue
            u, v = self.edges[eid]
            cu, cv = self.p2_of[u], self.p2_of[v]
            if cu == cv:
                continue  # contraction drops self-loops
            g.insert_edge(cu, cv, self.labels[eid], eid=eid)
        return g

    # --- audits ------------------------------------------------------------------

    def recompute_records(self) -> dict[int, ClusterRecord]:
        """Partition records from scratch (reference for the cache audit)."""
        out: dict[int, ClusterRecord] = {}
        for tag, index in (("P1", self.p1_of), ("P2", self.p2_of)):
            for cid in sorted(set(index.values())):
                members = {v for v, c in index.items() if c == cid}
                boundary: set[int] = set()
                internal = 0
                for eid, (a, b) in self.edges.items():
                    ina, inb = a in members, b in members
                    if ina and inb:
                        internal += 1
                    elif ina or inb:
                        boundary.add(eid)
                out[cid] = ClusterRecord(cid, tag, members, boundary, internal)
        return out

    def audit_records(self) -> list[str]:
        """Mismatches between cached records and a from-scratch recount."""
        problems: list[str] = []
        fresh = self.recompute_records()
        if set(fresh) != set(self.records):
            problems.append(
                f"cluster id sets differ: {sorted(fresh)} vs {sorted(self.records)}"
            )
            return problems
        for cid, want in fresh.items():
            have = self.records[cid]
            for field in ("members", "boundary_eids", "internal_edges", "tag"):
                a, b = getattr(have, field), getattr(want, field)
                if a != b:
                    problems.append(f"cluster {cid} {field}: cached {a} != fresh {b}")
        # partitions must be label-consistent: P2 components of intracluster
        # edges, P1 components of intracluster+fragmented edges
        for tag, index in (("P1", self.p1_of), ("P2", self.p2_of)):
            for eid, (a, b) in self.edges.items():
                if self._in_level(self.labels[eid], tag) and index[a] != index[b]:
                    problems.append(f"{tag}: level edge {eid} crosses clusters")
        # P2 refines P1
        for eid, (a, b) in self.edges.items():
            if self.p2_of[a] == self.p2_of[b] and self.p1_of[a] != self.p1_of[b]:
                problems.append(f"edge {eid}: P2 does not refine P1")
        return problems
