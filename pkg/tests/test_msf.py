"""Minimum spanning forest view vs. from-scratch Kruskal."""

from __future__ import annotations

import random

import pytest

from dynmincut.msf import DisjointSets, WeightedForestView, kruskal


def _forest_ok(view: WeightedForestView) -> None:
    assert view.forest == kruskal(view.vertices, view.edges, view.loads)


def test_random_ops_match_kruskal():
    rng = random.Random(42)
    view = WeightedForestView()
    live: dict[int, tuple[int, int]] = {}
    next_eid = 0
    for v in range(10):
        view.add_vertex(v)
    for _ in range(400):
        roll = rng.random()
        if live and roll < 0.35:
            eid = rng.choice(sorted(live))
            view.msf_delete(eid)
            del live[eid]
        elif live and roll < 0.5:
            eid = rng.choice(sorted(live))
            view.msf_reweight(eid, rng.randint(0, 5))
        else:
            u, v = rng.sample(range(10), 2)
            view.msf_insert(next_eid, u, v, rng.randint(0, 5))
            live[next_eid] = (u, v)
            next_eid += 1
        _forest_ok(view)


def test_same_component_matches_union_find():
    rng = random.Random(7)
    view = WeightedForestView()
    for v in range(8):
        view.add_vertex(v)
    edges = []
    for eid in range(12):
        u, v = rng.sample(range(8), 2)
        view.msf_insert(eid, u, v)
        edges.append((u, v))
    dsu = DisjointSets()
    for v in range(8):
        dsu.add(v)
    for u, v in edges:
        dsu.union(u, v)
    for u in range(8):
        for v in range(8):
            assert view.same_component(u, v) == (dsu.find(u) == dsu.find(v))


def test_remove_vertex_requires_isolation():
    view = WeightedForestView()
    view.msf_insert(0, 1, 2)
    with pytest.raises(ValueError):
        view.remove_vertex(1)
    view.msf_delete(0)
    view.remove_vertex(1)
    assert 1 not in view.vertices
