"""Recursive instances and the range ladder vs. the static oracle."""

from __future__ import annotations

import random

from dynmincut.driver import RangeLadder, _bridges, ladder_indices
from dynmincut.oracle import connected_components, min_proper_cut

from conftest import cycle_plus_chords, dense_sides_with_crossing


def test_ladder_indices_tile_the_value_range():
    rows = ladder_indices(18)
    covered = sorted(x for _, lo, hi in rows for x in range(lo, hi + 1))
    assert covered == list(range(1, 19))
    for _, lo, hi in rows:
        assert 5 * hi <= 6 * lo  # each row is a valid bounded-ratio window


def test_bridges_match_brute_force():
    rng = random.Random(3)
    for trial in range(40):
        n = rng.randint(3, 8)
        m = rng.randint(n - 1, 2 * n)
        edges = dict(enumerate(cycle_plus_chords(n, m, seed=800 + trial)))
        if trial % 3 == 0:  # drop some edges so bridges actually appear
            for eid in list(edges)[:: 3]:
                del edges[eid]
        got = set(_bridges(set(range(n)), edges))
        want = set()
        for eid in edges:
            rest = [uv for e, uv in edges.items() if e != eid]
            before = connected_components(range(n), edges.values())
            after = connected_components(range(n), rest)
            if len(after) > len(before):
                want.add(eid)
        # parallel edges are never bridges
        assert got == want, (trial, sorted(got), sorted(want))


def _oracle_answer(n, present, cap):
    comps = connected_components(range(n), present)
    if len(comps) > 1:
        return ("disconnected", 0)
    value = min_proper_cut(range(n), present).value
    if value is None:
        return ("empty", None)
    if value > cap:
        return ("above-cap", None)
    return ("value", value)


def _replay_and_check(n, edges, updates, seed, cap=18, decomposer="conductance"):
    rng = random.Random(seed)
    lad = RangeLadder(range(n), decomposer=decomposer, value_cap=cap)
    present = []
    for u, v in edges:
        lad.insert(u, v)
        present.append((min(u, v), max(u, v)))
    for step in range(updates):
        if present and rng.random() < 0.5:
            u, v = present.pop(rng.randrange(len(present)))
            lad.delete(u, v)
        else:
            u, v = rng.sample(range(n), 2)
            u, v = min(u, v), max(u, v)
            lad.insert(u, v)
            present.append((u, v))
        ans = lad.query()
        kind, value = _oracle_answer(n, present, cap)
        assert ans.kind == kind and ans.value in (value, 0 if kind == "disconnected" else value), (
            step, ans, kind, value)
        if ans.kind == "value":
            from dynmincut.oracle import boundary
            assert boundary(ans.witness, present) == ans.value
    return lad


def test_small_streams_match_oracle_exactly():
    for trial in range(6):
        n = random.Random(trial).randint(5, 10)
        edges = cycle_plus_chords(n, n + trial, seed=900 + trial)
        lad = _replay_and_check(n, edges, updates=40, seed=trial)
        assert lad.audit() == []


def test_trivial_decomposer_agrees_too():
    edges = cycle_plus_chords(8, 14, seed=1)
    lad = _replay_and_check(8, edges, updates=25, seed=5,
                            decomposer="trivial")
    assert lad.audit() == []


def test_planted_cut_is_tracked_through_updates():
    edges, left, right = dense_sides_with_crossing(16, 3, seed=2)
    lad = RangeLadder(range(16))
    present = list(edges)
    for u, v in edges:
        lad.insert(u, v)
    ans = lad.query()
    assert ans.kind == "value" and ans.value == min_proper_cut(
        range(16), present).value
    rng = random.Random(8)
    added = []
    for step in range(30):
        if added and rng.random() < 0.5:
            u, v = added.pop()
            lad.delete(u, v)
            present.remove((u, v))
        else:
            side = left if rng.random() < 0.5 else right
            u, v = rng.sample(side, 2)
            u, v = min(u, v), max(u, v)
            lad.insert(u, v)
            present.append((u, v))
            added.append((u, v))
        ans = lad.query()
        assert ans.value == min_proper_cut(range(16), present).value
    assert lad.audit() == []


def test_disconnection_and_reconnection():
    lad = RangeLadder(range(4))
    eids = [lad.insert(0, 1), lad.insert(1, 2), lad.insert(2, 3)]
    assert lad.query().value == 1
    lad.delete(1, 2)
    ans = lad.query()
    assert ans.kind == "disconnected" and ans.value == 0
    lad.insert(1, 2)
    lad.insert(0, 2)
    lad.insert(1, 3)
    assert lad.query().value == 2


def test_above_cap_detection():
    # K7 has minimum cut 6, above a cap of 4
    edges = [(u, v) for u in range(7) for v in range(u + 1, 7)]
    lad = RangeLadder(range(7), value_cap=4)
    for u, v in edges:
        lad.insert(u, v)
    assert lad.query().kind == "above-cap"
