"""Local bounded-cut enumeration vs. exhaustive oracle filtering."""

from __future__ import annotations

import random

from dynmincut.localkcut import LocalKCutDS
from dynmincut.oracle import boundary, enumerate_cuts, min_proper_cut, volume
from dynmincut.params import Params

from conftest import cycle_plus_chords


def _load(edges, params) -> LocalKCutDS:
    ds = LocalKCutDS(params)
    for eid, (u, v) in enumerate(edges):
        ds.lkc_insert(eid, u, v)
    return ds


def _check_vertex(ds, n, edges, v, params):
    p = params
    got = set(ds.lkc_query(v))
    allowed = set(enumerate_cuts(range(n), edges, v, p.lam_max, p.nu))
    # soundness: everything reported satisfies the output conditions
    assert got <= allowed
    lam = min_proper_cut(range(n), edges).value
    if lam is None:
        return
    # completeness: cuts within beta of the minimum must all be present
    required = {S for S in allowed
                if boundary(S, edges) <= p.beta * lam}
    assert required <= got, (sorted(required - got), v)


def test_query_matches_oracle_small_graphs():
    p = Params(lam_min=3, lam_max=3)
    rng = random.Random(17)
    for trial in range(25):
        n = rng.randint(4, 8)
        edges = cycle_plus_chords(n, rng.randint(n, 2 * n), seed=300 + trial)
        ds = _load(edges, p)
        for v in range(n):
            _check_vertex(ds, n, edges, v, p)


def test_query_matches_oracle_with_active_respect_filter():
    p = Params(lam_min=16, lam_max=18)
    assert p.respect_bound < p.lam_max  # the forest filter participates
    rng = random.Random(23)
    for trial in range(6):
        n = rng.randint(4, 6)
        edges = cycle_plus_chords(n, rng.randint(n, 2 * n), seed=400 + trial)
        ds = _load(edges, p)
        for v in range(n):
            _check_vertex(ds, n, edges, v, p)


def test_dynamic_updates_keep_answers_exact():
    p = Params(lam_min=2, lam_max=2)
    rng = random.Random(31)
    n = 6
    ds = LocalKCutDS(p)
    for v in range(n):
        ds.add_vertex(v)
    live: dict[int, tuple[int, int]] = {}
    next_eid = 0
    for step in range(60):
        if live and rng.random() < 0.4:
            eid = rng.choice(sorted(live))
            ds.lkc_delete(eid)
            del live[eid]
        else:
            u, v = rng.sample(range(n), 2)
            ds.lkc_insert(next_eid, u, v)
            live[next_eid] = (u, v)
            next_eid += 1
        edges = [live[e] for e in sorted(live)]
        for v in range(n):
            got = set(ds.lkc_query(v))
            for S in got:
                assert boundary(S, edges) <= p.lam_max
                assert volume(S, edges) <= p.nu
