"""Ground-truth reference algorithms: Stoer-Wagner, proper-cut minimum,
bounded cut enumeration, and sparse-cut enumeration.

These are the base-case solvers and the acceptance-test backend. They are
written for graphs small enough that exhaustive work is fine; determinism
matters more than speed here.
"""

from __future__ import annotations

import dataclasses
from fractions import Fraction
from typing import Iterable, Iterator, Optional

Edge = tuple[int, int]


@dataclasses.dataclass
class OracleResult:
    value: Optional[int]
    witness: Optional[frozenset[int]]

    @property
    def found(self) -> bool:
        return self.value is not None


def _adjacency(vertices: Iterable[int], edges: Iterable[Edge]) -> dict[int, dict[int, int]]:
    """Weighted adjacency: adj[u][v] = parallel-edge multiplicity."""
    adj: dict[int, dict[int, int]] = {v: {} for v in vertices}
    for u, v in edges:
        if u == v:
            raise ValueError("self-loop")
        adj.setdefault(u, {})
        adj.setdefault(v, {})
        adj[u][v] = adj[u].get(v, 0) + 1
        adj[v][u] = adj[v].get(u, 0) + 1
    return adj


def connected_components(vertices: Iterable[int], edges: Iterable[Edge]) -> list[frozenset[int]]:
    adj = _adjacency(vertices, edges)
    seen: set[int] = set()
    comps: list[frozenset[int]] = []
    for root in sorted(adj):
        if root in seen:
            continue
        comp = {root}
        stack = [root]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def stoer_wagner_weighted(
    vertices: Iterable[int], wadj: dict[int, dict[int, float]]
) -> tuple[float, frozenset[int]]:
    """Global minimum cut of a connected weighted graph (deterministic ties).

    Returns (value, one side of the cut as original vertices).
    """
    verts = sorted(set(vertices))
    if len(verts) < 2:
        raise ValueError("need at least 2 vertices")
    # merged[x] = set of original vertices currently contracted into x
    merged: dict[int, set[int]] = {v: {v} for v in verts}
    adj: dict[int, dict[int, float]] = {
        v: {u: w for u, w in wadj.get(v, {}).items() if u != v} for v in verts
    }
    best_val: Optional[float] = None
    best_side: frozenset[int] = frozenset()
    active = list(verts)
    while len(active) > 1:
        # minimum cut phase (maximum adjacency order), deterministic tie-break on id
        start = active[0]
        in_a = {start}
        order = [start]
        weights = {v: adj[start].get(v, 0.0) for v in active if v != start}
        while len(order) < len(active):
            nxt = max(weights, key=lambda v: (weights[v], -v))
            order.append(nxt)
            in_a.add(nxt)
            del weights[nxt]
            for u, w in adj[nxt].items():
                if u in weights:
                    weights[u] += w
        t = order[-1]
        s = order[-2]
        cut_of_phase = sum(adj[t].values())
        if best_val is None or cut_of_phase < best_val:
            best_val = cut_of_phase
            best_side = frozenset(merged[t])
        # merge t into s
        merged[s] |= merged[t]
        for u, w in list(adj[t].items()):
            if u == s:
                continue
            adj[s][u] = adj[s].get(u, 0.0) + w
            adj[u][s] = adj[u].get(s, 0.0) + w
        for u in adj[t]:
            adj[u].pop(t, None)
        adj[t] = {}
        active.remove(t)
    assert best_val is not None
    return best_val, best_side


def stoer_wagner(vertices: Iterable[int], edges: Iterable[Edge]) -> tuple[int, frozenset[int]]:
    """Unweighted multigraph global mincut; graph must be connected."""
    adj = _adjacency(vertices, edges)
    val, side = stoer_wagner_weighted(adj.keys(), {u: dict(nb) for u, nb in adj.items()})
    return int(round(val)), side


def min_proper_cut(vertices: Iterable[int], edges: Iterable[Edge]) -> OracleResult:
    """Smallest non-zero cut of a possibly disconnected multigraph.

    A proper cut lives inside one connected component; singleton components
    and empty graphs contribute nothing.
    """
    edges = list(edges)
    comps = connected_components(vertices, edges)
    best: Optional[int] = None
    witness: Optional[frozenset[int]] = None
    for comp in sorted(comps, key=lambda c: sorted(c)):
        if len(comp) < 2:
            continue
        comp_edges = [(u, v) for u, v in edges if u in comp]
        val, side = stoer_wagner(comp, comp_edges)
        if best is None or val < best:
            best, witness = val, side
    return OracleResult(best, witness)


def boundary(S: frozenset[int] | set[int], edges: Iterable[Edge]) -> int:
    return sum(1 for u, v in edges if (u in S) != (v in S))


def volume(S: frozenset[int] | set[int], edges: Iterable[Edge]) -> int:
    return sum((u in S) + (v in S) for u, v in edges)


def _connected_supersets(
    adj: dict[int, dict[int, int]],
    deg: dict[int, int],
    v: int,
    max_vol: Optional[int],
) -> Iterator[frozenset[int]]:
    """All connected vertex sets containing v with volume <= max_vol.

    Canonical include/exclude recursion over frontier vertices; each set is
    produced exactly once. Pruning only on volume (reference enumerator).
    """
    out: list[frozenset[int]] = []

    def rec(S: set[int], vol: int, excluded: set[int], frontier: list[int]) -> None:
        if not frontier:
            out.append(frozenset(S))
            return
        u, rest = frontier[0], frontier[1:]
        # branch 1: exclude u
        excluded.add(u)
        rec(S, vol, excluded, rest)
        excluded.remove(u)
        # branch 2: include u
        new_vol = vol + deg[u]
        if max_vol is None or new_vol <= max_vol:
            S.add(u)
            newf = rest + sorted(
                w for w in adj[u] if w not in S and w not in excluded and w not in rest
            )
            rec(S, new_vol, excluded, newf)
            S.remove(u)

    if max_vol is not None and deg[v] > max_vol:
        return iter(())
    rec({v}, deg[v], set(), sorted(adj[v]))
    return iter(out)


def enumerate_cuts(
    vertices: Iterable[int],
    edges: Iterable[Edge],
    v: int,
    lam_max: int,
    nu: Optional[int],
    connected_only: bool = True,
) -> list[frozenset[int]]:
    """All S containing v with boundary <= lam_max, vol(S) <= nu, G[S] connected.

    Exhaustive reference for the LocalKCut output conditions; feasible for
    small graphs only. Sorted canonically (size, then vertex tuple).
    """
    edges = list(edges)
    adj = _adjacency(vertices, edges)
    deg = {x: sum(adj[x].values()) for x in adj}
    if v not in adj:
        raise KeyError(v)
    del connected_only  # enumeration is connected by construction
    found = []
    for S in _connected_supersets(adj, deg, v, nu):
        b = sum(mult for x in S for y, mult in adj[x].items() if y not in S)
        if b <= lam_max:
            found.append(S)
    return sorted(found, key=lambda S: (len(S), sorted(S)))


def is_boundary_sparse(
    S: frozenset[int] | set[int],
    C: frozenset[int] | set[int],
    delta: Fraction,
    edges: Iterable[Edge],
) -> bool:
    """Def of (1-delta)-boundary sparsity of S inside cluster C."""
    w_in = w_s_out = w_rest_out = 0
    for u, v in edges:
        su, sv = u in S, v in S
        cu, cv = u in C, v in C
        if su and sv:
            continue
        if su != sv:
            if cu and cv:
                w_in += 1
            elif su or sv:  # the S endpoint is in C by S <= C
                w_s_out += 1
        if cu != cv and not su and not sv:
            w_rest_out += 1
    return w_in < (1 - delta) * min(w_s_out, w_rest_out)


def enumerate_sparse_cuts(
    vertices: Iterable[int],
    edges: Iterable[Edge],
    C: frozenset[int] | set[int],
    delta: Fraction,
    lam_max: int,
    nu: Optional[int],
    lam_min: int = 0,
) -> list[frozenset[int]]:
    """(1-delta)-boundary-sparse connected S strictly inside C with
    lam_min <= boundary(S) <= lam_max (in the full graph) and vol(S) <= nu.

    Reference for the unchecked-vertex invariant audit. C with no boundary
    edges short-circuits to the empty family (the sparsity bound is then
    unsatisfiable).
    """
    edges = list(edges)
    C = frozenset(C)
    if not any((u in C) != (v in C) for u, v in edges):
        return []
    inner_edges = [(u, v) for u, v in edges if u in C and v in C]
    adj = _adjacency(C, inner_edges)
    deg_full = {x: 0 for x in C}
    for u, v in edges:
        if u in C:
            deg_full[u] += 1
        if v in C:
            deg_full[v] += 1
    found: set[frozenset[int]] = set()
    for v0 in sorted(C):
        for S in _connected_supersets(adj, deg_full, v0, nu):
            if S in found or len(S) >= len(C):
                continue
            b = boundary(S, edges)
            if lam_min <= b <= lam_max and is_boundary_sparse(S, C, delta, edges):
                found.add(S)
    return sorted(found, key=lambda S: (len(S), sorted(S)))
