"""Deterministic covering families: exhaustive covering checks."""

from __future__ import annotations

import itertools
import random

from dynmincut.splitter import ColoringFamily, build_family


def _check_cover(fam: ColoringFamily, universe: list[int], a: int, b: int):
    """Every disjoint (A, B) with |A|<=a, |B|<=b is split by some member."""
    for ka in range(a + 1):
        for A in itertools.combinations(universe, ka):
            rest = [x for x in universe if x not in A]
            for kb in range(min(b, len(rest)) + 1):
                for B in itertools.combinations(rest, kb):
                    Af, Bf = frozenset(A), frozenset(B)
                    W = fam.covering_witness(Af, Bf)
                    assert Af <= W and not (Bf & W), (A, B, sorted(W))


def test_exhaustive_small_families():
    for N, a, b in [(4, 1, 1), (6, 2, 2), (8, 2, 3), (8, 3, 2), (12, 2, 2)]:
        fam = build_family(N, a, b)
        _check_cover(fam, list(range(N)), a, b)


def test_witness_is_a_family_member():
    fam = build_family(8, 2, 2)
    members = set(fam.sets())
    W = fam.covering_witness(frozenset({0, 3}), frozenset({1, 6}))
    assert W in members


def test_covering_survives_slot_churn():
    """Assign/free interleavings: live slots keep the covering property."""
    rng = random.Random(3)
    fam = build_family(6, 2, 2)
    live: set[int] = set()
    next_eid = 0
    for step in range(300):
        if live and rng.random() < 0.45:
            eid = rng.choice(sorted(live))
            fam.free_slot(eid)
            live.discard(eid)
        else:
            fam.assign_slot(next_eid)
            live.add(next_eid)
            next_eid += 1
        if step % 25 == 0 and len(live) >= 4:
            ids = sorted(live)
            slots = {e: fam.slot_of_edge[e] for e in ids}
            A = frozenset(slots[e] for e in ids[:2])
            B = frozenset(slots[e] for e in ids[2:4]) - A
            W = fam.covering_witness(A, B)
            assert A <= W and not (B & W)


def test_rebuild_count_grows_on_overflow():
    fam = build_family(2, 1, 1)
    for eid in range(40):
        fam.assign_slot(eid)
    assert fam.rebuild_count >= 1
    # all live edges still hold distinct slots after rebuilds
    slots = [fam.slot_of_edge[e] for e in range(40)]
    assert len(set(slots)) == 40
