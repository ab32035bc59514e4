"""Per-vertex minimum local cut store vs. independent enumeration."""

from __future__ import annotations

import random

from dynmincut.mirrorcuts import MirrorCutStore
from dynmincut.oracle import boundary, enumerate_cuts, volume
from dynmincut.params import Params


def _independent_min(vertices, edges, v, z, params):
    """Min proper local cut value at v in a mirror host, by enumeration."""
    cluster = frozenset(x for x in vertices if x != z)
    best = None
    for S in enumerate_cuts(vertices, edges.values(), v, params.lam_max,
                            params.nu):
        if z in S or S == cluster:
            continue
        b = boundary(S, edges.values())
        if 1 <= b <= params.lam_max:
            best = b if best is None else min(best, b)
    return best


def _check_store(store, hosts, params):
    assert store.audit() == []
    for key, (verts, edges, z) in hosts.items():
        for v in verts:
            if v == z:
                continue
            want = _independent_min(verts, edges, v, z, params)
            stored = store.stored[v]
            have = (None if stored is None
                    else store.records[(key, stored)].value)
            assert have == want, (key, v, have, want)


def test_static_cluster_values_match_enumeration():
    p = Params(lam_min=2, lam_max=2)
    store = MirrorCutStore(p)
    rng = random.Random(5)
    hosts = {}
    base = 0
    for key in range(3):
        nv = rng.randint(3, 5)
        verts = list(range(base, base + nv)) + [-1]
        edges = {}
        eid = 1000 * key
        for i in range(nv - 1):  # spanning path keeps the cluster connected
            edges[eid] = (verts[i], verts[i + 1])
            eid += 1
        for _ in range(rng.randint(1, 4)):
            u, v = rng.sample(verts[:-1], 2)
            edges[eid] = (u, v)
            eid += 1
        for _ in range(rng.randint(1, 3)):  # boundary edges to z
            edges[eid] = (rng.choice(verts[:-1]), -1)
            eid += 1
        store.add_cluster(key, verts, edges, z=-1)
        hosts[key] = (verts, dict(edges), -1)
        base += nv
    _check_store(store, hosts, p)


def test_batched_updates_keep_values_exact():
    p = Params(lam_min=2, lam_max=2)
    store = MirrorCutStore(p)
    rng = random.Random(11)
    verts = [0, 1, 2, 3, 4, -1]
    edges = {0: (0, 1), 1: (1, 2), 2: (2, 3), 3: (3, 4), 4: (0, -1)}
    store.add_cluster(7, verts, edges, z=-1)
    hosts = {7: (verts, edges, -1)}
    next_eid = 5
    for step in range(40):
        inserts, deletes = [], []
        used = set()
        for _ in range(rng.randint(1, 3)):
            pool = [e for e in edges if e not in used]
            if pool and rng.random() < 0.4 and len(edges) > len(used) + 2:
                eid = rng.choice(sorted(pool))
                used.add(eid)
                deletes.append((7, eid))
            else:
                u = rng.choice(verts[:-1])
                v = rng.choice([x for x in verts if x != u])
                inserts.append((7, next_eid, u, v))
                next_eid += 1
        store.mc_batch_update(inserts=inserts, deletes=deletes)
        for _, eid in deletes:
            del edges[eid]
        for _, eid, u, v in inserts:
            edges[eid] = (u, v)
        _check_store(store, hosts, p)


def test_remove_cluster_clears_all_state():
    p = Params(lam_min=1, lam_max=1)
    store = MirrorCutStore(p)
    store.add_cluster(1, [0, 1, -1], {0: (0, 1), 1: (1, -1)}, z=-1)
    store.remove_cluster(1)
    assert store.records == {} and store.stored == {} and store.mc_min() is None
