"""Fragmenting of low-boundary clusters via the Trim recursion.

A cluster C is split into fragments so that every small low-boundary cut S
inside C stops being boundary-sparse relative to some grouping of the
fragments. The recursion keeps a candidate cut family (seeded by local-cut
queries at boundary-incident vertices) and at each node:

  1. prunes candidates that are not (1-delta)-boundary-sparse in the
     current piece C';
  2. if some candidate D has at most 0.4*lam_max edges to C'\\D
     (inclusive), splits C' at D;
  3. otherwise splits at the candidate minimizing min{|D|, |C'\\D|}
     (ties: lexicographically smallest canonical vertex set),

recursing on both sides with the element-wise intersected family. Both
split kinds strictly decrease the piece boundary (by 0.04*lam_min and
0.4*delta*lam_min respectively, given mincut >= lam_min); that decrease is
asserted at every node.
"""

from __future__ import annotations

import math
import warnings
from typing import Callable, Iterable, Optional

from .dyngraph import DynMultiGraph
from .localkcut import LocalKCutDS
from .oracle import is_boundary_sparse, min_proper_cut
from .params import Params

QueryFn = Callable[[int], Iterable[frozenset[int]]]


def fragment_count_bound(delta, n: int, scale: int = 8) -> float:
    """Soft bound on the fragment count: scale / delta^2 * polylog(n)."""
    return scale / float(delta) ** 2 * (1 + math.log2(max(2, n))) ** 2


def _weights(S: frozenset[int], Cp: frozenset[int],
             edges: list[tuple[int, int]]) -> tuple[int, int]:
    """(w(S, C'\\S), w(S, V\\C')) for S inside C'."""
    w_in = w_out = 0
    for u, v in edges:
        su, sv = u in S, v in S
        if su == sv:
            continue
        other = v if su else u
        if other in Cp:
            w_in += 1
        else:
            w_out += 1
    return w_in, w_out


def _boundary(S: frozenset[int], edges: list[tuple[int, int]]) -> int:
    return sum(1 for u, v in edges if (u in S) != (v in S))


_candidate_memo: dict = {}


def default_candidates(graph: DynMultiGraph, cid: int, params: Params
                       ) -> list[frozenset[int]]:
    """Local-cut queries on every boundary-incident vertex of the cluster.

    Runs over the cluster-internal edges only, so every candidate has
    vol <= nu and at most lam_max internal boundary edges.
    """
    rec = graph.records[cid]
    inner = [(eid, *graph.edges[eid]) for eid in sorted(graph.edges)
             if graph.edges[eid][0] in rec.members
             and graph.edges[eid][1] in rec.members]
    seeds = sorted({x for eid in rec.boundary_eids
                    for x in graph.edges[eid] if x in rec.members})
    # with the forest-respect filter inactive the answer is a pure function
    # of the induced multigraph and seeds; identical clusters recur across
    # parallel range instances, so memoize
    memoizable = params.respect_bound >= params.lam_max
    key = None
    if memoizable:
        key = (frozenset(rec.members),
               tuple(sorted((min(a, b), max(a, b)) for _, a, b in inner)),
               tuple(seeds), params.lam_max, params.nu)
        hit = _candidate_memo.get(key)
        if hit is not None:
            return hit
    lkc = LocalKCutDS(params)
    for x in sorted(rec.members):
        lkc.add_vertex(x)
    for eid, u, v in inner:
        lkc.lkc_insert(eid, u, v)
    found: set[frozenset[int]] = set()
    for v in seeds:
        found.update(lkc.lkc_query(v))
    out = sorted(found, key=lambda S: (len(S), sorted(S)))
    if memoizable:
        if len(_candidate_memo) >= 200_000:
            _candidate_memo.clear()
        _candidate_memo[key] = out
    return out


def trim(
    Cp: frozenset[int],
    candidates: list[frozenset[int]],
    edges: list[tuple[int, int]],
    params: Params,
    out: list[frozenset[int]],
) -> None:
    """Refine Cp into fragments, appending them to out."""
    p = params
    # per-branch family intersection, dropping empty/full members
    fam = sorted(
        {S & Cp for S in candidates if S & Cp and S & Cp != Cp},
        key=lambda S: (len(S), sorted(S)),
    )
    # step 1: keep only cuts that are boundary sparse in the current piece
    fam = [S for S in fam if is_boundary_sparse(S, Cp, p.delta, edges)]
    if not fam:
        out.append(Cp)
        return
    # step 2: a candidate with few internal boundary edges splits directly
    step2 = [
        (w_in, len(S), sorted(S), S)
        for S in fam
        for w_in in (_weights(S, Cp, edges)[0],)
        if 10 * w_in <= 4 * p.lam_max
    ]
    if step2:
        D = min(step2)[3]
        d_cp = _boundary(Cp, edges)
        assert _boundary(D, edges) <= d_cp - 0.04 * p.lam_min + 1e-9
        assert _boundary(Cp - D, edges) <= d_cp - 0.04 * p.lam_min + 1e-9
    else:
        # step 3: most unbalanced candidate; ties by canonical vertex order
        D = min(fam, key=lambda S: (min(len(S), len(Cp) - len(S)), sorted(S)))
        d_cp = _boundary(Cp, edges)
        dec = 0.4 * float(p.delta) * p.lam_min
        assert _boundary(D, edges) <= d_cp - dec + 1e-9
        assert _boundary(Cp - D, edges) <= d_cp - dec + 1e-9
    trim(D, fam, edges, params, out)
    trim(Cp - D, fam, edges, params, out)


def fragment(
    graph: DynMultiGraph,
    cid: int,
    params: Params,
    candidates: Optional[Iterable[frozenset[int]]] = None,
    audit: bool = True,
) -> list[frozenset[int]]:
    """Partition cluster cid into fragments; order is deterministic.

    Preconditions (audited when audit=True): the cluster's internal mincut
    is at least lam_max/beta and its boundary is at most 6*lam_max.
    """
    p = params
    rec = graph.records[cid]
    C = frozenset(rec.members)
    edges = [graph.edges[eid] for eid in sorted(graph.edges)]
    if audit:
        if rec.boundary > 6 * p.lam_max:
            raise ValueError(
                f"cluster {cid}: boundary {rec.boundary} exceeds 6*lam_max"
            )
        if len(C) > 1:
            inner = [(u, v) for u, v in edges if u in C and v in C]
            mc = min_proper_cut(C, inner)
            if mc.value is not None and mc.value * p.beta < p.lam_max:
                raise ValueError(
                    f"cluster {cid}: internal mincut {mc.value} below lam_max/beta"
                )
    if candidates is None:
        cand = default_candidates(graph, cid, p)
    else:
        cand = sorted({frozenset(S) for S in candidates},
                      key=lambda S: (len(S), sorted(S)))
    out: list[frozenset[int]] = []
    trim(C, cand, edges, p, out)
    bound = fragment_count_bound(p.delta, len(C))
    if len(out) > bound:
        warnings.warn(
            f"fragment count {len(out)} exceeds soft bound {bound:.1f}",
            stacklevel=2,
        )
    return out
