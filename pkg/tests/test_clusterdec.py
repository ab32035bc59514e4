"""Expander decomposition layer: certificates, checked/unchecked loop."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from dynmincut import clusterdec
from dynmincut.clusterdec import (
    ConductanceDecomposer,
    TrivialDecomposer,
    audit_unchecked_invariant,
    conductance_certificate,
    decompose_expanders,
)
from dynmincut.dyngraph import INTER, INTRA, DynMultiGraph
from dynmincut.params import Params

from conftest import cycle_plus_chords


def _brute_conductance(members, edges):
    mem = sorted(members)
    inner = [(u, v) for u, v in edges if u in members and v in members]
    deg = {v: 0 for v in mem}
    for u, v in inner:
        deg[u] += 1
        deg[v] += 1
    best = None
    for r in range(1, len(mem)):
        for S in itertools.combinations(mem, r):
            Sf = set(S)
            w = sum(1 for u, v in inner if (u in Sf) != (v in Sf))
            vol = min(sum(deg[x] for x in Sf),
                      sum(deg[x] for x in mem if x not in Sf))
            cond = Fraction(0) if vol == 0 else Fraction(w, vol)
            if best is None or cond < best:
                best = cond
    return best


def test_certificate_value_matches_independent_enumeration():
    rng = random.Random(3)
    for trial in range(15):
        n = rng.randint(2, 6)
        edges = cycle_plus_chords(n, rng.randint(n, 2 * n), seed=500 + trial)
        members = frozenset(range(n))
        clusterdec._cert_memo.clear()
        cond, side = conductance_certificate(members, edges)
        assert cond == _brute_conductance(members, edges)
        if side is not None:
            assert side and side < members


def test_certificate_memo_is_transparent():
    edges = cycle_plus_chords(6, 10, seed=9)
    members = frozenset(range(6))
    clusterdec._cert_memo.clear()
    fresh = conductance_certificate(members, edges)
    cached = conductance_certificate(members, edges)
    assert fresh == cached


def _decomposed_graph(n, edges, params, plug):
    g = DynMultiGraph(range(n))
    pieces = plug.decompose(set(range(n)), edges, params)
    piece_of = {x: i for i, piece in enumerate(pieces) for x in piece}
    for u, v in edges:
        g.insert_edge(u, v, INTRA if piece_of[u] == piece_of[v] else INTER)
    return g


def test_trivial_decomposer_keeps_components_whole():
    plug = TrivialDecomposer()
    p = Params(lam_min=2, lam_max=2)
    edges = [(0, 1), (1, 2), (3, 4)]
    pieces = plug.decompose({0, 1, 2, 3, 4}, edges, p)
    assert sorted(sorted(x) for x in pieces) == [[0, 1, 2], [3, 4]]


def test_conductance_decomposer_pieces_are_certified_and_small():
    plug = ConductanceDecomposer()
    p = Params(lam_min=2, lam_max=2)
    rng = random.Random(21)
    for trial in range(8):
        n = rng.randint(6, 14)
        edges = cycle_plus_chords(n, rng.randint(n, 3 * n), seed=600 + trial)
        pieces = plug.decompose(set(range(n)), edges, p)
        assert sorted(x for piece in pieces for x in piece) == list(range(n))
        for piece in pieces:
            assert len(piece) <= plug.cert_size_cap
            if len(piece) > 1:
                cond, _ = conductance_certificate(piece, edges)
                assert cond >= p.phi


def test_unchecked_invariant_after_decomposition():
    """The checked/unchecked loop leaves no fully-checked sparse cut."""
    p = Params(lam_min=2, lam_max=2)
    plug = ConductanceDecomposer()
    rng = random.Random(37)
    for trial in range(10):
        n = rng.randint(6, 12)
        edges = cycle_plus_chords(n, rng.randint(n, 2 * n), seed=700 + trial)
        g = _decomposed_graph(n, edges, p, plug)
        decompose_expanders(g, p)
        assert audit_unchecked_invariant(g, p) == []


def test_incremental_seed_preserves_invariant():
    p = Params(lam_min=2, lam_max=2)
    plug = ConductanceDecomposer()
    edges = cycle_plus_chords(10, 20, seed=42)
    g = _decomposed_graph(10, edges, p, plug)
    decompose_expanders(g, p)
    # a later repair pass reuses the existing checked flags untouched
    decompose_expanders(g, p, seed_unchecked=())
    assert audit_unchecked_invariant(g, p) == []
