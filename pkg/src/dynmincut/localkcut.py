"""Deterministic fully-dynamic local cut search.

A query at vertex v returns every connected vertex set S containing v with
boundary at most lam_max and volume at most nu, optionally filtered by the
greedy-packing respect condition: S survives only if some forest among the
first k greedy forests has at most r = floor(2*(1+eps)*beta) tree edges
crossing S. Whenever r >= lam_max the filter is vacuous (a crossing tree
edge is a boundary edge, and boundaries are already capped at lam_max), so
the packing is skipped and the query is the exact bounded enumeration.

The search is a canonical include/exclude recursion over the frontier of S
(each connected superset of {v} is visited exactly once) with monotone
prunes:

  * committed boundary: edges from S to explicitly excluded vertices can
    never leave the cut; prune when they alone exceed lam_max;
  * volume: prune when vol(S) exceeds nu;
  * volume-vs-frontier: absorbing an S->undecided edge requires including
    its far endpoint, which costs at least one unit of volume per absorbed
    edge, so final boundary >= committed + max(0, F - (nu - vol));
  * packing respect (when active): per-forest committed tree-crossing
    counts, maintained as a numpy vector; prune when every forest already
    crosses S more than r times.

Coloring families are maintained alongside (slot per live edge, rebuild at
doubling) so their covering behaviour is exercised under the same update
stream; the query result itself is produced by the enumeration above, which
yields the same output family as a per-(forest, coloring-pair) traversal.
"""

from __future__ import annotations

import dataclasses

import numpy as np

from .packing import distinct_greedy_forests
from .params import Params
from .splitter import ColoringFamily


@dataclasses.dataclass
class LkcCounters:
    updates: int = 0
    queries: int = 0
    nodes_explored: int = 0
    forests_built: int = 0


class LocalKCutDS:
    """Dynamic bounded-cut enumerator over one host graph view.

    Volume counts self-loops twice (mirror hosts may carry them); boundary
    and traversal ignore them.
    """

    def __init__(self, params: Params) -> None:
        p = params
        if p.lam_max >= p.nu:
            raise ValueError("need lam_max < nu")
        if p.respect_bound < p.lam_max and p.beta > p.lam_max:
            raise ValueError("beta must be <= lam_max when the respect filter is active")
        self.params = p
        self.edges: dict[int, tuple[int, int]] = {}
        # adj[u][v] = list of edge ids (parallel edges); self-loops kept apart
        self.adj: dict[int, dict[int, list[int]]] = {}
        self.self_loops: dict[int, list[int]] = {}
        self.red_blue: ColoringFamily = ColoringFamily(
            max(1, 4 * p.lam_max), 2 * p.beta if 2 * p.beta <= 4 * p.lam_max else 4 * p.lam_max,
            min(p.nu, 4 * p.lam_max))
        self.green_yellow: ColoringFamily = ColoringFamily(
            max(1, 4 * p.lam_max), 2 * p.beta if 2 * p.beta <= 4 * p.lam_max else 4 * p.lam_max,
            min(p.lam_max, 4 * p.lam_max))
        self.counters = LkcCounters()
        self._version = 0
        self._forest_cache: tuple[int, list[frozenset[int]]] | None = None

    # --- vertex/edge maintenance -------------------------------------------

    def add_vertex(self, v: int) -> None:
        self.adj.setdefault(v, {})

    def remove_vertex(self, v: int) -> None:
        if self.adj.get(v) or self.self_loops.get(v):
            raise ValueError(f"vertex {v} still has incident edges")
        self.adj.pop(v, None)
        self.self_loops.pop(v, None)

    def lkc_insert(self, eid: int, u: int, v: int) -> None:
        if eid in self.edges:
            raise KeyError(f"duplicate edge id {eid}")
        self.edges[eid] = (u, v)
        self.adj.setdefault(u, {})
        self.adj.setdefault(v, {})
        if u == v:
            self.self_loops.setdefault(u, []).append(eid)
        else:
            self.adj[u].setdefault(v, []).append(eid)
            self.adj[v].setdefault(u, []).append(eid)
            self.red_blue.assign_slot(eid)
            self.green_yellow.assign_slot(eid)
        self.counters.updates += 1
        self._version += 1

    def lkc_delete(self, eid: int) -> None:
        if eid not in self.edges:
            raise KeyError(eid)
        u, v = self.edges.pop(eid)
        if u == v:
            self.self_loops[u].remove(eid)
            if not self.self_loops[u]:
                del self.self_loops[u]
        else:
            self.adj[u][v].remove(eid)
            if not self.adj[u][v]:
                del self.adj[u][v]
            self.adj[v][u].remove(eid)
            if not self.adj[v][u]:
                del self.adj[v][u]
            self.red_blue.free_slot(eid)
            self.green_yellow.free_slot(eid)
        self.counters.updates += 1
        self._version += 1

    # --- helpers ------------------------------------------------------------

    def degree(self, v: int) -> int:
        return sum(len(ids) for ids in self.adj.get(v, {}).values()) + 2 * len(
            self.self_loops.get(v, ())
        )

    @property
    def filter_active(self) -> bool:
        return self.params.respect_bound < self.params.lam_max

    def _forests(self) -> list[frozenset[int]]:
        """Distinct forests among the first k greedy forests (cached per version)."""
        if self._forest_cache is not None and self._forest_cache[0] == self._version:
            return self._forest_cache[1]
        plain = {e: uv for e, uv in self.edges.items() if uv[0] != uv[1]}
        k = self.params.packing_k(len(plain))
        forests = distinct_greedy_forests(set(self.adj), plain, k, iteration_cap=k)
        self.counters.forests_built += len(forests)
        self._forest_cache = (self._version, forests)
        return forests

    # --- query ----------------------------------------------------------------

    def lkc_query(self, v: int) -> list[frozenset[int]]:
        """All found S with v in S, boundary <= lam_max, vol <= nu, G[S] connected.

        Deterministic; sorted by (size, vertex tuple). Complete for every
        such S whose boundary is within beta times the minimum cut.
        """
        if v not in self.adj:
            raise KeyError(v)
        p = self.params
        self.counters.queries += 1
        lam_max, nu, r = p.lam_max, p.nu, p.respect_bound

        if self.filter_active:
            forests = self._forests()
            nf = len(forests)
            eids = sorted(e for e, (a, b) in self.edges.items() if a != b)
            col = {e: i for i, e in enumerate(eids)}
            member = np.zeros((len(eids), max(nf, 1)), dtype=np.int64)
            for fi, f in enumerate(forests):
                for e in f:
                    member[col[e], fi] = 1
            cross = np.zeros(max(nf, 1), dtype=np.int64)
        else:
            member = cross = None  # type: ignore[assignment]

        adj = self.adj
        deg = self.degree
        out: list[frozenset[int]] = []
        S: set[int] = set()
        excluded: set[int] = set()
        state = {"vol": 0, "committed": 0, "frontier_edges": 0}

        def multi(u: int, x: int) -> int:
            return len(adj[u].get(x, ()))

        def include(u: int) -> bool:
            """Add u to S; return False (after NOT mutating) if a prune fires."""
            nonlocal cross
            new_vol = state["vol"] + deg(u)
            if new_vol > nu:
                return False
            to_s = to_ex = 0
            for x, ids in adj[u].items():
                if x in S:
                    to_s += len(ids)
                elif x in excluded:
                    to_ex += len(ids)
            committed = state["committed"] + to_ex
            if committed > lam_max:
                return False
            fe = state["frontier_edges"] - to_s + (deg(u) - 2 * len(
                self.self_loops.get(u, ())) - to_s - to_ex)
            if committed + max(0, fe - (nu - new_vol)) > lam_max:
                return False
            if cross is not None:
                for x, ids in adj[u].items():
                    if x in excluded:
                        for e in ids:
                            cross += member[col[e]]
                if int(cross.min(initial=0)) > r:
                    for x, ids in adj[u].items():
                        if x in excluded:
                            for e in ids:
                                cross -= member[col[e]]
                    return False
            S.add(u)
            state["vol"] = new_vol
            state["committed"] = committed
            state["frontier_edges"] = fe
            return True

        def uninclude(u: int) -> None:
            nonlocal cross
            S.remove(u)
            to_s = to_ex = 0
            for x, ids in adj[u].items():
                if x in S:
                    to_s += len(ids)
                elif x in excluded:
                    to_ex += len(ids)
                if cross is not None and x in excluded:
                    for e in ids:
                        cross -= member[col[e]]
            state["vol"] -= deg(u)
            state["committed"] -= to_ex
            state["frontier_edges"] += to_s - (
                deg(u) - 2 * len(self.self_loops.get(u, ())) - to_s - to_ex)

        def exclude(u: int) -> bool:
            """Move u (a frontier vertex) to excluded; prune check included."""
            nonlocal cross
            k = sum(len(ids) for x, ids in adj[u].items() if x in S)
            committed = state["committed"] + k
            if committed > lam_max:
                return False
            if cross is not None:
                for x, ids in adj[u].items():
                    if x in S:
                        for e in ids:
                            cross += member[col[e]]
                if int(cross.min(initial=0)) > r:
                    for x, ids in adj[u].items():
                        if x in S:
                            for e in ids:
                                cross -= member[col[e]]
                    return False
            excluded.add(u)
            state["committed"] = committed
            state["frontier_edges"] -= k
            return True

        def unexclude(u: int) -> None:
            nonlocal cross
            excluded.remove(u)
            k = 0
            for x, ids in adj[u].items():
                if x in S:
                    k += len(ids)
                    if cross is not None:
                        for e in ids:
                            cross -= member[col[e]]
            state["committed"] -= k
            state["frontier_edges"] += k

        def rec(frontier: list[int]) -> None:
            self.counters.nodes_explored += 1
            if not frontier:
                # leaf: all neighbours of S decided, so the counters are exact
                if state["committed"] <= lam_max and (
                    cross is None or int(cross.min(initial=0)) <= r
                ):
                    out.append(frozenset(S))
                return
            u, rest = frontier[0], frontier[1:]
            if exclude(u):
                rec(rest)
                unexclude(u)
            if include(u):
                newf = rest + sorted(
                    x for x in adj[u]
                    if x not in S and x not in excluded and x not in rest
                )
                rec(newf)
                uninclude(u)

        if include(v):
            rec(sorted(adj[v]))
            uninclude(v)
        return sorted(out, key=lambda s: (len(s), sorted(s)))
