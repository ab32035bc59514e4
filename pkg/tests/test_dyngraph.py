"""Labeled multigraph with the two-level partition: record bookkeeping."""

from __future__ import annotations

import random

import pytest

from dynmincut.dyngraph import (
    FRAGMENTED,
    INTER,
    INTRA,
    DynMultiGraph,
)
from dynmincut.oracle import connected_components


def _partition_from_labels(g, keep_labels):
    edges = [(u, v) for eid, (u, v) in g.edges.items()
             if g.labels[eid] in keep_labels]
    return {frozenset(c) for c in connected_components(g.vertices, edges)}


def _records_match_labels(g):
    for tag, labels in (("P1", (INTRA, FRAGMENTED)), ("P2", (INTRA,))):
        recs = {frozenset(r.members) for r in g.clusters(tag)}
        assert recs == _partition_from_labels(g, labels), tag
    assert g.audit_records() == []


def test_random_labelled_churn_keeps_records_consistent():
    rng = random.Random(13)
    g = DynMultiGraph(range(9))
    live: list[int] = []
    for step in range(250):
        if live and rng.random() < 0.35:
            eid = live.pop(rng.randrange(len(live)))
            g.delete_edge(eid)
        else:
            u, v = rng.sample(range(9), 2)
            label = rng.choice([INTRA, INTER, FRAGMENTED])
            live.append(g.insert_edge(u, v, label))
        if step % 10 == 0:
            _records_match_labels(g)
    _records_match_labels(g)


def test_split_rejects_label_promotion():
    g = DynMultiGraph(range(3))
    eid = g.insert_edge(0, 1, INTER)
    with pytest.raises(ValueError):
        g.split_cluster([(eid, INTRA)])


def test_split_then_merge_roundtrip():
    rng = random.Random(29)
    for trial in range(40):
        g = DynMultiGraph(range(8))
        eids = []
        for _ in range(14):
            u, v = rng.sample(range(8), 2)
            eids.append(g.insert_edge(u, v, INTRA))
        # fragment a few edges, then undo within each P1 cluster
        sample = rng.sample(eids, 5)
        g.split_cluster([(e, FRAGMENTED) for e in sample])
        _records_match_labels(g)
        p2_before_merge = _partition_from_labels(g, (INTRA,))
        assert len(p2_before_merge) >= 1
        for rec in list(g.clusters("P1")):
            g.merge_fragmented(rec.cid)
        _records_match_labels(g)
        assert all(g.labels[e] == INTRA for e in eids)


def test_remove_vertex_requires_isolation():
    g = DynMultiGraph(range(4))
    eid = g.insert_edge(0, 1, INTRA)
    with pytest.raises(ValueError):
        g.remove_vertex(0)
    g.delete_edge(eid)
    g.remove_vertex(0)
    assert 0 not in g.vertices
    assert g.audit_records() == []


def test_contracted_graph_collapses_p1_clusters():
    g = DynMultiGraph(range(6))
    for u, v in [(0, 1), (1, 2), (3, 4), (4, 5)]:
        g.insert_edge(u, v, INTRA)
    cross = g.insert_edge(2, 3, INTER)
    h = g.contracted_graph()
    assert len(h.vertices) == 2
    assert set(h.edges) == {cross}


def test_mirror_cluster_contracts_outside_to_z():
    g = DynMultiGraph(range(5))
    for u, v in [(0, 1), (1, 2)]:
        g.insert_edge(u, v, INTRA)
    g.insert_edge(2, 3, INTER)
    g.insert_edge(3, 4, INTRA)
    cid = next(r.cid for r in g.clusters("P1") if 0 in r.members)
    m = g.mirror_cluster(cid, z=-1)
    assert m.vertices == {0, 1, 2, -1}
    assert sorted(map(sorted, m.edges.values())) == [[-1, 2], [0, 1], [1, 2]]
