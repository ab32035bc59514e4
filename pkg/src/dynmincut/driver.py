"""Dynamic minimum proper cut: bounded-range instances and the range ladder.

A LevelInstance answers exactly when the host graph's min proper cut lies
in [lam_min, lam_max] and otherwise reports "above range". Small graphs
(volume at most the local-cut cap nu, or at most two vertices, or at the
recursion depth cap) are handled by the exact quadratic oracle; larger
graphs run the cluster pipeline:

  expander decomposition -> edge labels -> low-cut detector -> checked/
  unchecked refinement -> fragmentation -> per-cluster mirror cut stores ->
  a recursive instance on the contraction of the refined partition.

A query is the cheaper of the best stored mirror cut (covering every cut
that lives inside one cluster within the volume cap) and the recursive
answer on the contraction (covering every cut that respects the refined
partition); uncrossing guarantees one of the two attains the minimum when
it is in range.

The RangeLadder runs one instance per value range of a geometric ladder,
feeds updates to instances in increasing range order, and stops at the
first instance whose answer lies inside its own range. Instances above the
stopping point stay stale and are caught up lazily (net insertions before
net deletions, so the intermediate graph is a supergraph of both endpoints
of the catch-up window and the instance's lower bound stays valid).
"""

from __future__ import annotations

import dataclasses
from typing import Iterable, Optional

from .clusterdec import (
    DECOMPOSERS,
    ExpanderDecomposerPlug,
    decompose_expanders,
)
from .dyngraph import (
    FRAG_CLASS,
    FRAGMENTED,
    INTER,
    INTRA,
    POORLY,
    WELL,
    DynMultiGraph,
)
from .fragment import fragment
from .mirrorcuts import MirrorCutStore
from .oracle import connected_components, min_proper_cut
from .params import Params, lambda_range

__all__ = ["LevelInstance", "RangeLadder", "LadderAnswer", "ladder_indices"]


# --------------------------------------------------------------------------
# helpers
# --------------------------------------------------------------------------


def _low_cut_threshold(lam_max: int) -> int:
    """Largest ladder upper bound whose range sits at or below lam_max/8.

    Cuts at or below this value are structural (they would be answered by a
    much lower instance), so the pipeline removes them from clusters
    eagerly; zero when lam_max < 8.
    """
    best = 0
    i = 0
    while 1.2 ** i <= lam_max / 8:
        best = lambda_range(i)[1]
        i += 1
    return best


def _bridges(vertices: Iterable[int], edges: dict[int, tuple[int, int]]) -> list[int]:
    """Bridge edge ids of a multigraph (parallel edges are never bridges)."""
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in vertices}
    multiplicity: dict[frozenset[int], int] = {}
    for eid, (u, v) in edges.items():
        adj[u].append((v, eid))
        adj[v].append((u, eid))
        key = frozenset((u, v))
        multiplicity[key] = multiplicity.get(key, 0) + 1
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    out: list[int] = []
    counter = 0
    for root in sorted(adj):
        if root in disc:
            continue
        # iterative DFS with an explicit stack of (vertex, parent edge, iterator)
        stack = [(root, -1, iter(sorted(adj[root])))]
        disc[root] = low[root] = counter
        counter += 1
        while stack:
            x, peid, it = stack[-1]
            advanced = False
            for y, eid in it:
                if eid == peid:
                    continue
                if y not in disc:
                    disc[y] = low[y] = counter
                    counter += 1
                    stack.append((y, eid, iter(sorted(adj[y]))))
                    advanced = True
                    break
                low[x] = min(low[x], disc[y])
            if advanced:
                continue
            stack.pop()
            if stack:
                parent = stack[-1][0]
                low[parent] = min(low[parent], low[x])
                if low[x] > disc[parent] and multiplicity[frozenset((parent, x))] == 1:
                    out.append(peid)
    return sorted(out)


@dataclasses.dataclass
class InstanceCounters:
    rebuilds: int = 0
    incremental_updates: int = 0
    detector_cuts: int = 0
    recertify_cuts: int = 0
    fallback_cuts: int = 0
    refragmentations: int = 0


# P1 cluster signature: (members, internal edge ids, boundary edge ids)
Signature = tuple[tuple[int, ...], frozenset[int], frozenset[int]]


# --------------------------------------------------------------------------
# one bounded-range instance
# --------------------------------------------------------------------------


class LevelInstance:
    """Exact min proper cut under the promise lam_min <= cut <= lam_max.

    Values above lam_max are reported as such (query result above lam_max);
    values below lam_min void the promise and the answer is unspecified.
    """

    def __init__(
        self,
        vertices: Iterable[int],
        edges: dict[int, tuple[int, int]],
        params: Params,
        plug: ExpanderDecomposerPlug,
        depth: int = 0,
        rebuild_scale: int = 16,
    ) -> None:
        self.params = params
        self.plug = plug
        self.depth = depth
        self.rebuild_scale = rebuild_scale
        self.counters = InstanceCounters()
        self._updates_since_rebuild = 0
        self._init_structures(set(vertices), dict(edges))

    # --- construction -----------------------------------------------------------

    def _is_base(self, vertices: set[int], edges: dict[int, tuple[int, int]]) -> bool:
        return (
            2 * len(edges) <= self.params.nu
            or len(vertices) <= 2
            or self.depth >= self.params.depth_cap
        )

    def _init_structures(
        self, vertices: set[int], edges: dict[int, tuple[int, int]]
    ) -> None:
        self.base = self._is_base(vertices, edges)
        self.graph: Optional[DynMultiGraph] = None
        self.mirrors: Optional[MirrorCutStore] = None
        self.child: Optional[LevelInstance] = None
        self._sigs: dict[int, Signature] = {}
        self._mirror_sigs: dict[int, Signature] = {}
        self._cadence = max(
            4, self.rebuild_scale * max(1, (len(edges) * self.params.phi.numerator)
                                        // (self.params.phi.denominator * self.params.rho))
        )
        if self.base:
            self._vertices = set(vertices)
            self._edges = dict(edges)
            return
        self._build(vertices, edges)

    def _build(self, vertices: set[int], edges: dict[int, tuple[int, int]]) -> None:
        p = self.params
        g = DynMultiGraph(sorted(vertices))
        edge_list = [edges[eid] for eid in sorted(edges)]
        pieces = self.plug.decompose(vertices, edge_list, p)
        piece_of = {x: i for i, piece in enumerate(pieces) for x in piece}
        for eid in sorted(edges):
            u, v = edges[eid]
            label = INTRA if piece_of[u] == piece_of[v] else INTER
            g.insert_edge(u, v, label, eid=eid)
        self.graph = g
        self._cut_low_cuts()
        decompose_expanders(g, p)
        for rec in g.clusters("P1"):
            rec.classification = WELL if rec.boundary >= 3 * p.lam_max else POORLY
        work = [rec.cid for rec in g.clusters("P1")
                if rec.classification != WELL]
        while work:
            work.extend(self._refragment(work.pop(0)))
        volume = 2 * len(edges)
        self._mp = self.plug.effective_params(p, max(volume, 1))
        self.mirrors = MirrorCutStore(self._mp)
        self._sigs = self._signatures()
        self._sync_mirrors()
        self._sync_child()

    def rebuild(self) -> None:
        self.counters.rebuilds += 1
        self._updates_since_rebuild = 0
        self._init_structures(self.current_vertices(), self.current_edges())

    # --- state views --------------------------------------------------------------

    def current_vertices(self) -> set[int]:
        return set(self._vertices) if self.base else set(self.graph.adj)

    def current_edges(self) -> dict[int, tuple[int, int]]:
        return dict(self._edges) if self.base else dict(self.graph.edges)

    # --- updates -------------------------------------------------------------------
    #
    # All mutation funnels through apply_batch: raw edge/vertex changes are
    # applied first, then one repair pass and one derived-state sync run for
    # the whole batch. The recursive instance therefore sees each parent
    # update as a single batch of its own, keeping the total work linear in
    # the recursion depth instead of multiplying per level.

    def insert(self, u: int, v: int, eid: int) -> None:
        self.apply_batch(inserts=[(eid, u, v)])

    def delete(self, eid: int) -> None:
        self.apply_batch(deletes=[eid])

    def add_vertex(self, v: int, inner_volume: int = 0) -> None:
        self.apply_batch(vertex_adds=[(v, inner_volume)])

    def remove_vertex(self, v: int) -> None:
        self.apply_batch(vertex_removes=[v])

    def apply_batch(
        self,
        deletes: list[int] = (),
        vertex_removes: list[int] = (),
        vertex_adds: list[tuple[int, int]] = (),
        inserts: list[tuple[int, int, int]] = (),
    ) -> None:
        nops = len(deletes) + len(vertex_removes) + len(vertex_adds) + len(inserts)
        if nops == 0:
            return
        self._updates_since_rebuild += nops
        if self.base:
            for eid in deletes:
                del self._edges[eid]
            for v in vertex_removes:
                self._vertices.discard(v)
            for v, _ in vertex_adds:
                self._vertices.add(v)
            for eid, u, v in inserts:
                self._edges[eid] = (u, v)
            if not self._is_base(self._vertices, self._edges):
                self.rebuild()
            return
        post_edges = len(self.graph.edges) - len(deletes) + len(inserts)
        if (
            self._updates_since_rebuild >= self._cadence
            or 2 * post_edges <= self.params.nu
        ):
            vertices = self.current_vertices()
            edges = self.current_edges()
            for eid in deletes:
                del edges[eid]
            for v in vertex_removes:
                vertices.discard(v)
            for v, _ in vertex_adds:
                vertices.add(v)
            for eid, u, v in inserts:
                edges[eid] = (u, v)
            self.counters.rebuilds += 1
            self._updates_since_rebuild = 0
            self._init_structures(vertices, edges)
            return
        self._incremental(deletes, vertex_removes, vertex_adds, inserts)

    def _incremental(
        self,
        deletes: list[int],
        vertex_removes: list[int],
        vertex_adds: list[tuple[int, int]],
        inserts: list[tuple[int, int, int]],
    ) -> None:
        self.counters.incremental_updates += 1
        g = self.graph
        p = self.params
        old_sigs = self._sigs
        touched: set[int] = set()
        for eid in deletes:
            u, v = g.edges[eid]
            g.delete_edge(eid)
            touched.add(u)
            touched.add(v)
        for v in vertex_removes:
            g.remove_vertex(v)
            touched.discard(v)
        for v, iv in vertex_adds:
            g.add_vertex(v, inner_volume=iv)
        for eid, u, v in inserts:
            if g.p2_of[u] == g.p2_of[v]:
                label = INTRA
            elif g.p1_of[u] == g.p1_of[v]:
                label = FRAGMENTED
            else:
                label = INTER
            g.insert_edge(u, v, label, eid=eid)
            touched.add(u)
            touched.add(v)
        for x in sorted(touched):
            g.mark_unchecked(x)
        self._cut_low_cuts()
        self._recertify_changed(old_sigs)
        self._uncheck_boundaries(old_sigs)
        decompose_expanders(g, p, seed_unchecked=())
        self._reclassify()
        self._refragment_changed(old_sigs)
        self._refresh_derived()

    def _refresh_derived(self) -> None:
        self._sigs = self._signatures()
        self._sync_mirrors()
        self._sync_child()

    # --- pipeline steps ---------------------------------------------------------

    def _cut_low_cuts(self) -> None:
        """Relabel edges crossing proper cuts at or below the low threshold.

        Such cuts would be answered by a lower ladder range; removing them
        keeps every cluster's internal connectivity well above lam_max/beta.
        """
        g = self.graph
        threshold = _low_cut_threshold(self.params.lam_max)
        if threshold <= 0:
            return
        # threshold 1: every bridge is a 1-cut; found in one linear pass
        relabels = [
            (eid, INTER)
            for eid in _bridges(g.adj, g.edges)
            if g.labels[eid] != INTER
        ]
        self._apply_inter_relabels(relabels)
        while threshold >= 2:
            mc = min_proper_cut(g.adj, g.edges.values())
            if mc.value is None or mc.value > threshold:
                return
            S = mc.witness
            relabels = [
                (eid, INTER)
                for eid, (a, b) in sorted(g.edges.items())
                if (a in S) != (b in S) and g.labels[eid] != INTER
            ]
            if not relabels:
                return  # the cut already runs along intercluster edges
            self._apply_inter_relabels(relabels)

    def _apply_inter_relabels(self, relabels: list[tuple[int, str]]) -> None:
        if not relabels:
            return
        self.counters.detector_cuts += len(relabels)
        self.graph.split_cluster(sorted(relabels))
        for eid, _ in relabels:
            for x in self.graph.edges[eid]:
                self.graph.mark_unchecked(x)

    def _changed_p1(self, old_sigs: dict[int, Signature]) -> list[int]:
        now = self._signatures()
        return sorted(cid for cid, sig in now.items() if old_sigs.get(cid) != sig)

    def _recertify_changed(self, old_sigs: dict[int, Signature]) -> None:
        g, p = self.graph, self.params
        for cid in self._changed_p1(old_sigs):
            rec = g.records.get(cid)
            if rec is None or rec.tag != "P1":
                continue
            members = frozenset(rec.members)
            if len(members) <= 1:
                continue
            internal = [
                g.edges[eid]
                for eid in sorted(g.edges)
                if g.edges[eid][0] in members and g.edges[eid][1] in members
            ]
            pieces = self.plug.recertify(members, internal, p)
            if len(pieces) <= 1:
                continue
            piece_of = {x: i for i, piece in enumerate(pieces) for x in piece}
            relabels = [
                (eid, INTER)
                for eid in sorted(g.edges)
                if g.edges[eid][0] in piece_of
                and g.edges[eid][1] in piece_of
                and piece_of[g.edges[eid][0]] != piece_of[g.edges[eid][1]]
                and g.labels[eid] != INTER
            ]
            if relabels:
                self.counters.recertify_cuts += len(relabels)
                g.split_cluster(relabels)
                for eid, _ in relabels:
                    for x in g.edges[eid]:
                        g.mark_unchecked(x)

    def _uncheck_boundaries(self, old_sigs: dict[int, Signature]) -> None:
        g = self.graph
        cap = 2 * self.params.lam_max
        for cid in self._changed_p1(old_sigs):
            rec = g.records.get(cid)
            if rec is None or rec.tag != "P1":
                continue
            for eid in sorted(rec.boundary_eids)[:cap]:
                a, b = g.edges[eid]
                g.mark_unchecked(a if a in rec.members else b)

    def _reclassify(self) -> None:
        lam_max = self.params.lam_max
        for rec in self.graph.clusters("P1"):
            b = rec.boundary
            if rec.classification == WELL and b <= 3 * lam_max:
                rec.classification = POORLY
            elif b >= 6 * lam_max:
                rec.classification = WELL

    def _refragment_changed(self, old_sigs: dict[int, Signature]) -> None:
        work = [
            cid
            for cid in self._changed_p1(old_sigs)
            if self.graph.records.get(cid) is not None
            and self.graph.records[cid].tag == "P1"
            and self.graph.records[cid].classification != WELL
        ]
        while work:
            cid = work.pop(0)
            rec = self.graph.records.get(cid)
            if rec is None or rec.tag != "P1" or rec.classification == WELL:
                continue
            work.extend(self._refragment(cid))

    def _refragment(self, cid: int) -> list[int]:
        """Refragment one non-well cluster; returns follow-up cluster ids.

        If the cluster's internal connectivity has sunk below lam_max/beta
        the fragmenting precondition fails; in that case the cluster is cut
        along its internal min proper cut (a legitimate refinement: with the
        low-cut detector active the cut's full-graph boundary is explained
        by boundary edges) and both sides are re-queued.
        """
        g, p = self.graph, self.params
        rec = g.records[cid]
        if rec.boundary > 6 * p.lam_max:
            rec.classification = WELL
            return []
        g.merge_fragmented(cid)
        self.counters.refragmentations += 1
        try:
            parts = fragment(g, cid, p)
        except ValueError:
            members = frozenset(rec.members)
            inner = [
                (a, b)
                for eid, (a, b) in sorted(g.edges.items())
                if a in members and b in members
            ]
            mc = min_proper_cut(members, inner)
            if mc.value is None:
                return []
            S = mc.witness
            relabels = [
                (eid, INTER)
                for eid, (a, b) in sorted(g.edges.items())
                if a in members and b in members
                and (a in S) != (b in S)
                and g.labels[eid] != INTER
            ]
            if not relabels:
                return []
            self.counters.fallback_cuts += len(relabels)
            new_cids = g.split_cluster(relabels)
            for eid, _ in relabels:
                for x in g.edges[eid]:
                    g.mark_unchecked(x)
            return [cid] + [
                c for c in new_cids if g.records.get(c) and g.records[c].tag == "P1"
            ]
        rec.classification = FRAG_CLASS
        if len(parts) > 1:
            part_of = {x: i for i, piece in enumerate(parts) for x in piece}
            relabels = [
                (eid, FRAGMENTED)
                for eid in sorted(g.edges)
                if g.edges[eid][0] in part_of
                and g.edges[eid][1] in part_of
                and part_of[g.edges[eid][0]] != part_of[g.edges[eid][1]]
                and g.labels[eid] == INTRA
            ]
            g.split_cluster(relabels)
        return []

    # --- derived-state sync (mirrors, recursive child) -----------------------------

    def _signatures(self) -> dict[int, Signature]:
        g = self.graph
        internal: dict[int, list[int]] = {}
        for eid in g.edges:
            a, b = g.edges[eid]
            ca = g.p1_of[a]
            if ca == g.p1_of[b]:
                internal.setdefault(ca, []).append(eid)
        out: dict[int, Signature] = {}
        for rec in g.clusters("P1"):
            out[rec.cid] = (
                tuple(sorted(rec.members)),
                frozenset(internal.get(rec.cid, ())),
                frozenset(rec.boundary_eids),
            )
        return out

    def _sync_mirrors(self) -> None:
        """Reconcile the mirror stores with the current cluster signatures.

        Clusters whose member set (or boundary emptiness) changed are torn
        down and re-added; clusters with the same members but different edge
        sets get a batched edge diff. Internal edge e mirrors as 2e, a
        boundary edge as 2e+1 against the contraction vertex z = -1.
        """
        new_sigs = self._sigs
        old = self._mirror_sigs
        store = self.mirrors
        inserts: list[tuple[int, int, int, int]] = []
        deletes: list[tuple[int, int]] = []
        readd: list[int] = []
        for key in sorted(old):
            if key not in new_sigs:
                store.remove_cluster(key)
                continue
            o, n = old[key], new_sigs[key]
            if o == n:
                continue
            if o[0] != n[0] or bool(o[2]) != bool(n[2]):
                store.remove_cluster(key)
                readd.append(key)
                continue
            g = self.graph
            for eid in sorted(o[1] - n[1]):
                deletes.append((key, 2 * eid))
            for eid in sorted(o[2] - n[2]):
                deletes.append((key, 2 * eid + 1))
            for eid in sorted(n[1] - o[1]):
                a, b = g.edges[eid]
                inserts.append((key, 2 * eid, a, b))
            for eid in sorted(n[2] - o[2]):
                a, b = g.edges[eid]
                inside = a if a in self.graph.records[key].members else b
                inserts.append((key, 2 * eid + 1, inside, -1))
        if inserts or deletes:
            store.mc_batch_update(inserts, deletes)
        for key in readd + sorted(set(new_sigs) - set(old)):
            members, internal, bnd = new_sigs[key]
            z = -1 if bnd else None
            verts = list(members) + ([z] if z is not None else [])
            edges: dict[int, tuple[int, int]] = {}
            g = self.graph
            for eid in internal:
                edges[2 * eid] = g.edges[eid]
            for eid in bnd:
                a, b = g.edges[eid]
                inside = a if a in g.records[key].members else b
                edges[2 * eid + 1] = (inside, z)
            store.add_cluster(key, verts, edges, z)
        self._mirror_sigs = dict(new_sigs)

    def _sync_child(self) -> None:
        """Reconcile the recursive instance with the current contraction."""
        cg = self.graph.contracted_graph()
        if not cg.edges:
            self.child = None
            return
        if self.child is None:
            depth = self.depth + 1
            # a contraction that made no progress would loop; force the
            # recursion to bottom out at the oracle
            if len(cg.adj) >= len(self.graph.adj):
                depth = self.params.depth_cap
            self.child = LevelInstance(
                cg.adj, dict(cg.edges), self.params, self.plug,
                depth=depth, rebuild_scale=self.rebuild_scale,
            )
            return
        self.child.apply_external(
            set(cg.adj), dict(cg.edges), dict(cg.inner_volume)
        )

    def apply_external(
        self,
        new_vertices: set[int],
        new_edges: dict[int, tuple[int, int]],
        inner_volume: Optional[dict[int, int]] = None,
    ) -> None:
        """Diff-apply a replacement vertex/edge state (parent-driven)."""
        cur_edges = self.current_edges()
        cur_vertices = self.current_vertices()
        removed = sorted(
            eid for eid in cur_edges
            if eid not in new_edges or new_edges[eid] != cur_edges[eid]
        )
        added = sorted(
            eid for eid in new_edges
            if eid not in cur_edges or cur_edges[eid] != new_edges[eid]
        )
        self.apply_batch(
            deletes=removed,
            vertex_removes=sorted(cur_vertices - new_vertices),
            vertex_adds=[
                (v, (inner_volume or {}).get(v, 0))
                for v in sorted(new_vertices - cur_vertices)
            ],
            inserts=[(eid, *new_edges[eid]) for eid in added],
        )

    # --- queries ----------------------------------------------------------------

    def query(self) -> Optional[tuple[int, frozenset[int]]]:
        """(value, witness) of the smallest cut candidate, or None.

        Exact whenever the true min proper cut is within [lam_min,
        lam_max]; any value above lam_max only certifies "above range".
        """
        if self.base:
            r = min_proper_cut(self._vertices, self._edges.values())
            if r.value is None:
                return None
            return r.value, r.witness
        best: Optional[tuple[int, frozenset[int]]] = None
        mm = self.mirrors.mc_min()
        if mm is not None:
            best = (mm[0], frozenset(mm[2]))
        if self.child is not None:
            cr = self.child.query()
            if cr is not None:
                cval, cwit = cr
                members: set[int] = set()
                for cid in cwit:
                    members |= self.graph.records[cid].members
                cand = (cval, frozenset(members))
                if best is None or (cand[0], len(cand[1]), sorted(cand[1])) < (
                    best[0], len(best[1]), sorted(best[1])
                ):
                    best = cand
        return best

    # --- audits -------------------------------------------------------------------

    def audit(self) -> list[str]:
        """Structure audit: records, label consistency, mirror hygiene."""
        if self.base:
            return []
        problems = [f"depth {self.depth}: {p}" for p in self.graph.audit_records()]
        problems += [f"depth {self.depth} mirrors: {p}" for p in self.mirrors.audit()]
        if self.child is not None:
            cg = self.graph.contracted_graph()
            if dict(cg.edges) != self.child.current_edges():
                problems.append(f"depth {self.depth}: child edges out of sync")
            if set(cg.adj) != self.child.current_vertices():
                problems.append(f"depth {self.depth}: child vertices out of sync")
            problems += self.child.audit()
        return problems


# --------------------------------------------------------------------------
# the range ladder
# --------------------------------------------------------------------------


def ladder_indices(value_cap: int) -> list[tuple[int, int, int]]:
    """(index, lam_min, lam_max) rows covering 1..value_cap.

    Rows with an empty or subsumed range (which occur for small indices
    because of rounding) are skipped; consecutive kept rows tile the
    integers with no gaps.
    """
    rows: list[tuple[int, int, int]] = []
    hi_seen = 0
    i = 0
    while hi_seen < value_cap:
        lo, hi = lambda_range(i)
        if lo <= hi and lo > hi_seen:
            if lo != hi_seen + 1:
                raise AssertionError(f"ladder gap before index {i}")
            rows.append((i, lo, hi))
            hi_seen = hi
        i += 1
    return rows


@dataclasses.dataclass
class LadderAnswer:
    kind: str  # "value" | "disconnected" | "above-cap" | "empty"
    value: Optional[int]
    witness: Optional[frozenset[int]]
    instances_touched: int = 0

    def __str__(self) -> str:
        if self.kind == "value":
            return str(self.value)
        if self.kind == "disconnected":
            return "0"
        if self.kind == "above-cap":
            return "above-cap"
        return "none"


@dataclasses.dataclass
class _Slot:
    index: int
    lo: int
    hi: int
    inst: Optional[LevelInstance] = None
    cursor: int = 0


class RangeLadder:
    """Exact dynamic min cut up to a value cap, by bounded-range instances."""

    def __init__(
        self,
        vertices: Iterable[int],
        decomposer: str = "conductance",
        value_cap: int = 18,
        rebuild_scale: int = 16,
        **plug_kwargs,
    ) -> None:
        self.vertices = set(vertices)
        self.edges: dict[int, tuple[int, int]] = {}
        self._next_eid = 0
        self._log: list[tuple[str, int, tuple[int, int]]] = []
        self.rebuild_scale = rebuild_scale
        self._plug_factory = DECOMPOSERS[decomposer]
        self._plug_kwargs = plug_kwargs
        self.slots = [_Slot(i, lo, hi) for i, lo, hi in ladder_indices(value_cap)]

    # --- update stream -----------------------------------------------------------

    def insert(self, u: int, v: int) -> int:
        if u == v:
            raise ValueError("self-loops are not allowed")
        if u not in self.vertices or v not in self.vertices:
            raise KeyError((u, v))
        eid = self._next_eid
        self._next_eid += 1
        self.edges[eid] = (min(u, v), max(u, v))
        self._log.append(("I", eid, self.edges[eid]))
        return eid

    def delete(self, u: int, v: int) -> int:
        key = (min(u, v), max(u, v))
        matches = sorted(eid for eid, uv in self.edges.items() if uv == key)
        if not matches:
            raise KeyError(key)
        eid = matches[0]
        del self.edges[eid]
        self._log.append(("D", eid, key))
        return eid

    # --- instance sync ------------------------------------------------------------

    def _sync(self, slot: _Slot) -> LevelInstance:
        if slot.inst is None:
            params = Params(lam_min=slot.lo, lam_max=slot.hi)
            plug = self._plug_factory(**self._plug_kwargs)
            slot.inst = LevelInstance(
                self.vertices, dict(self.edges), params, plug,
                rebuild_scale=self.rebuild_scale,
            )
            slot.cursor = len(self._log)
            return slot.inst
        pending = self._log[slot.cursor:]
        slot.cursor = len(self._log)
        if pending:
            ins = {eid: uv for kind, eid, uv in pending if kind == "I"}
            dels = {eid: uv for kind, eid, uv in pending if kind == "D"}
            # an edge inserted and deleted within the window cancels out;
            # net insertions apply before net deletions so the instance's
            # graph stays a supergraph of both window endpoints
            slot.inst.apply_batch(
                inserts=[(eid, *ins[eid]) for eid in sorted(set(ins) - set(dels))]
            )
            slot.inst.apply_batch(deletes=sorted(set(dels) - set(ins)))
        return slot.inst

    # --- queries ------------------------------------------------------------------

    def query(self) -> LadderAnswer:
        """Min cut of the current graph: 0 if disconnected, exact up to the cap."""
        if len(self.vertices) <= 1:
            return LadderAnswer("empty", None, None)
        comps = connected_components(self.vertices, self.edges.values())
        if len(comps) > 1:
            witness = min(comps, key=lambda c: (len(c), sorted(c)))
            return LadderAnswer("disconnected", 0, witness)
        touched = 0
        for slot in self.slots:
            inst = self._sync(slot)
            touched += 1
            r = inst.query()
            if r is None:
                continue
            value, witness = r
            if value <= slot.hi:
                return LadderAnswer("value", value, witness, touched)
        return LadderAnswer("above-cap", None, None, touched)

    def audit(self) -> list[str]:
        problems: list[str] = []
        for slot in self.slots:
            if slot.inst is None or slot.cursor != len(self._log):
                continue  # stale instances are audited when they catch up
            for p in slot.inst.audit():
                problems.append(f"range [{slot.lo},{slot.hi}]: {p}")
        return problems
