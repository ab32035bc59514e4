"""Greedy forest packings: validity, change bounds, respects counts."""

from __future__ import annotations

import itertools
import random

from dynmincut.msf import DisjointSets
from dynmincut.oracle import boundary, connected_components, min_proper_cut
from dynmincut.packing import (
    ForestPacking,
    distinct_greedy_forests,
    greedy_forests,
    respects_count,
)
from dynmincut.params import Params

from conftest import cycle_plus_chords


def _is_forest(vertices, edge_ids, edges):
    dsu = DisjointSets()
    for v in vertices:
        dsu.add(v)
    return all(dsu.union(*edges[e]) for e in sorted(edge_ids))


def test_greedy_forests_are_forests_with_balanced_loads():
    edges = dict(enumerate(cycle_plus_chords(8, 20, seed=1)))
    forests, loads = greedy_forests(set(range(8)), edges, 12)
    assert len(forests) == 12
    for f in forests:
        assert _is_forest(range(8), f, edges)
    assert sum(loads.values()) == sum(len(f) for f in forests)


def test_distinct_forests_match_plain_iteration():
    edges = dict(enumerate(cycle_plus_chords(7, 14, seed=2)))
    k = 40
    plain, _ = greedy_forests(set(range(7)), edges, k)
    seen = []
    for f in plain:
        if f not in seen:
            seen.append(f)
    assert distinct_greedy_forests(set(range(7)), edges, k) == seen


def test_incremental_packing_matches_scratch():
    rng = random.Random(9)
    pk = ForestPacking(6)
    live: dict[int, tuple[int, int]] = {}
    next_eid = 0
    for v in range(8):
        pk.add_vertex(v)
    for _ in range(120):
        if live and rng.random() < 0.4:
            eid = rng.choice(sorted(live))
            pk.packing_delete(eid)
            del live[eid]
        else:
            u, v = rng.sample(range(8), 2)
            pk.packing_insert(next_eid, u, v)
            live[next_eid] = (u, v)
            next_eid += 1
        scratch, _ = greedy_forests(pk.vertices, pk.edges, pk.k)
        assert pk.forests == scratch


def test_some_forest_respects_every_approximate_cut():
    """For beta-approximate proper cuts, a packed forest crosses few edges."""
    p = Params(lam_min=3, lam_max=3)
    r = p.respect_bound
    for trial in range(12):
        edges = dict(enumerate(cycle_plus_chords(8, 16, seed=50 + trial)))
        lam = min_proper_cut(range(8), edges.values()).value
        k = p.packing_k(len(edges))
        forests = distinct_greedy_forests(set(range(8)), edges, k)
        for size in range(1, 4):
            for S in itertools.combinations(range(8), size):
                Sf = frozenset(S)
                inner = [(u, v) for u, v in edges.values()
                         if u in Sf and v in Sf]
                if len(connected_components(Sf, inner)) != 1:
                    continue
                b = boundary(Sf, edges.values())
                if not (1 <= b <= p.beta * lam):
                    continue
                assert any(
                    respects_count(Sf, f, edges) <= r for f in forests
                ), (trial, S)
