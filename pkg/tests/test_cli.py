"""Command-line surface: generators, replays, reports, exit codes."""

from __future__ import annotations

import json

import pytest

from dynmincut.cli import (
    SCHEMA_VERSION,
    gen_planted,
    main,
    read_graph,
    read_stream,
    write_graph,
)
from dynmincut.oracle import min_proper_cut


def _write_stream(path, ops):
    with open(path, "w") as fh:
        for op in ops:
            fh.write(" ".join(str(x) for x in op) + "\n")


def test_graph_file_roundtrip(tmp_path):
    path = tmp_path / "g.txt"
    edges = [(0, 1), (1, 2), (0, 2)]
    write_graph(str(path), 3, edges)
    n, got = read_graph(str(path))
    assert n == 3 and got == edges


def test_graph_file_rejects_self_loops(tmp_path):
    path = tmp_path / "g.txt"
    path.write_text("2 1\n1 1\n")
    with pytest.raises(ValueError):
        read_graph(str(path))


def test_gen_planted_hits_the_target_value():
    for lam in (1, 2, 4):
        edges, stream = gen_planted(n=12, lam=lam, seed=3, updates=30)
        assert min_proper_cut(range(12), edges).value == lam
        assert len(stream) == 30


def test_run_full_audit_agrees_and_reports(tmp_path):
    g, s, rep = (str(tmp_path / x) for x in ("g.txt", "s.txt", "rep.json"))
    edges, stream = gen_planted(n=10, lam=2, seed=5, updates=25)
    write_graph(g, 10, edges)
    _write_stream(s, stream)
    rc = main(["run", "--graph", g, "--stream", s,
               "--audit", "full", "--report", rep])
    assert rc == 0
    report = json.load(open(rep))
    assert report["schema_version"] == SCHEMA_VERSION
    assert report["summary"]["updates"] == 25
    assert report["summary"]["disagreements"] == 0
    assert len(report["records"]) == 25
    first = report["records"][0]
    for field in ("step", "op", "value", "witness_size", "counters",
                  "agree", "ms"):
        assert field in first


def test_run_is_bit_reproducible(tmp_path):
    g, s = (str(tmp_path / x) for x in ("g.txt", "s.txt"))
    edges, stream = gen_planted(n=10, lam=2, seed=6, updates=20)
    write_graph(g, 10, edges)
    _write_stream(s, stream)
    reports = []
    for run in range(2):
        rep = str(tmp_path / f"rep{run}.json")
        main(["run", "--graph", g, "--stream", s, "--audit", "off",
              "--report", rep])
        data = json.load(open(rep))
        for rec in data["records"]:
            rec.pop("ms")
        data["summary"].pop("total_ms")
        reports.append(data)
    assert reports[0] == reports[1]


def test_weighted_run_exits_clean(tmp_path):
    import random

    from conftest import cycle_plus_chords

    g, s = (str(tmp_path / x) for x in ("g.txt", "s.txt"))
    rng = random.Random(0)
    shape = cycle_plus_chords(8, 16, seed=0)
    edges = [(u, v, round(rng.uniform(1, 4), 2)) for u, v in shape]
    write_graph(g, 8, edges)
    u, v, _ = edges[3]
    _write_stream(s, [("I", 0, 4, 2.0), ("D", u, v)])
    rc = main(["run", "--graph", g, "--stream", s, "--weighted",
               "--epsilon", "0.4", "--wmin", "1", "--wmax", "4",
               "--audit", "full", "--seed", "0"])
    assert rc == 0


def test_oracle_subcommand(tmp_path, capsys):
    g = str(tmp_path / "g.txt")
    write_graph(g, 4, [(u, v) for u in range(4) for v in range(u + 1, 4)])
    assert main(["oracle", "--graph", g]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["value"] == 3
