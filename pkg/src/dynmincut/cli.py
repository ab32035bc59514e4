"""Command-line front end: stream replay with audits, generators, oracles.

Subcommands:

  mincut run --graph FILE --stream FILE [--decomposer trivial|conductance]
             [--lambda-cap K] [--audit full|sampled|off] [--report out.json]
             [--weighted --epsilon E --wmin L --wmax U --seed S]
  mincut gen-planted --n N --lam K --seed S --out-graph FILE --out-stream FILE
  mincut oracle --graph FILE [--weighted]

Graph files start with a header line "n m" followed by m edge lines
"u v" (or "u v w" with --weighted); vertices are 0..n-1. Stream files hold
one update per line: "I u v" inserts, "D u v" deletes (the parallel edge
with the smallest id), with "w" appended to inserts in weighted mode.
Blank lines and lines starting with "#" are skipped.

The process exits 0 exactly when every audited update agreed with the
oracle (and the replay completed), making replays usable as checks in
scripts. Reports are JSON: one record per update plus a summary block.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import random
import sys
import time
from typing import Optional

from .driver import RangeLadder
from .oracle import connected_components, min_proper_cut
from .weighted import WeightedLadder, weighted_min_cut_oracle

SCHEMA_VERSION = 1
SAMPLED_AUDIT_STRIDE = 10


# --------------------------------------------------------------------------
# file formats
# --------------------------------------------------------------------------


def read_graph(path: str, weighted: bool = False):
    """(n, edges) where edges are (u, v) or (u, v, w) tuples."""
    with open(path) as fh:
        rows = [ln.split() for ln in fh
                if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows:
        raise ValueError(f"{path}: empty graph file")
    n, m = int(rows[0][0]), int(rows[0][1])
    body = rows[1:]
    if len(body) != m:
        raise ValueError(f"{path}: header says {m} edges, found {len(body)}")
    edges = []
    for row in body:
        u, v = int(row[0]), int(row[1])
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"{path}: vertex out of range in {row}")
        if u == v:
            raise ValueError(f"{path}: self-loop {row}")
        if weighted:
            edges.append((u, v, float(row[2])))
        else:
            edges.append((u, v))
    return n, edges


def read_stream(path: str, weighted: bool = False):
    """List of ("I", u, v[, w]) / ("D", u, v) tuples."""
    out = []
    with open(path) as fh:
        for ln in fh:
            row = ln.split()
            if not row or row[0].startswith("#"):
                continue
            kind = row[0].upper()
            if kind == "I":
                if weighted:
                    out.append(("I", int(row[1]), int(row[2]), float(row[3])))
                else:
                    out.append(("I", int(row[1]), int(row[2])))
            elif kind == "D":
                out.append(("D", int(row[1]), int(row[2])))
            else:
                raise ValueError(f"{path}: unknown op {row!r}")
    return out


# --------------------------------------------------------------------------
# replay
# --------------------------------------------------------------------------


@dataclasses.dataclass
class RunReport:
    """Append-only per-update records plus a summary block."""

    schema_version: int
    config: dict
    records: list[dict] = dataclasses.field(default_factory=list)
    summary: dict = dataclasses.field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(dataclasses.asdict(self), indent=2, sort_keys=True)


def _audited(step: int, mode: str) -> bool:
    if mode == "full":
        return True
    if mode == "sampled":
        return step % SAMPLED_AUDIT_STRIDE == 0
    return False


def replay_unweighted(n, edges, stream, args, report: RunReport) -> int:
    ladder = RangeLadder(
        range(n), decomposer=args.decomposer, value_cap=args.lambda_cap
    )
    present: list[tuple[int, int]] = []
    for u, v in edges:
        ladder.insert(u, v)
        present.append((min(u, v), max(u, v)))
    disagreements = 0
    for step, op in enumerate(stream):
        t0 = time.perf_counter()
        if op[0] == "I":
            _, u, v = op
            ladder.insert(u, v)
            present.append((min(u, v), max(u, v)))
        else:
            _, u, v = op
            ladder.delete(u, v)
            present.remove((min(u, v), max(u, v)))
        ans = ladder.query()
        record = {
            "step": step,
            "op": " ".join(str(x) for x in op),
            "value": ans.value,
            "kind": ans.kind,
            "witness_size": len(ans.witness) if ans.witness else 0,
            "instances_touched": ans.instances_touched,
            "counters": ladder_counters(ladder),
        }
        if _audited(step, args.audit):
            comps = connected_components(range(n), present)
            if len(comps) > 1:
                oracle_value = 0
            else:
                oracle_value = min_proper_cut(range(n), present).value
            if oracle_value is not None and oracle_value > args.lambda_cap:
                agree = ans.kind == "above-cap"
                record["oracle"] = f"{oracle_value} (above cap)"
            else:
                agree = ans.value == oracle_value
                record["oracle"] = oracle_value
            record["agree"] = agree
            disagreements += 0 if agree else 1
        record["ms"] = round((time.perf_counter() - t0) * 1000, 3)
        report.records.append(record)
    return disagreements


def replay_weighted(n, edges, stream, args, report: RunReport) -> int:
    ladder = WeightedLadder(
        range(n), eps=args.epsilon, wmin=args.wmin, wmax=args.wmax,
        seed=args.seed,
    )
    present: dict[int, tuple[int, int, float]] = {}
    for u, v, w in edges:
        eid = ladder.insert(u, v, w)
        present[eid] = (u, v, w)
    tol = (1 + args.epsilon) ** 4
    disagreements = 0
    for step, op in enumerate(stream):
        t0 = time.perf_counter()
        if op[0] == "I":
            _, u, v, w = op
            eid = ladder.insert(u, v, w)
            present[eid] = (u, v, w)
        else:
            _, u, v = op
            key = (min(u, v), max(u, v))
            matches = sorted(
                eid for eid, (a, b, _) in present.items()
                if (min(a, b), max(a, b)) == key
            )
            if not matches:
                raise KeyError(f"step {step}: no edge {key} to delete")
            ladder.delete(matches[0])
            del present[matches[0]]
        ans = ladder.query()
        record = {
            "step": step,
            "op": " ".join(str(x) for x in op),
            "value": None if ans.value is None else round(ans.value, 6),
            "kind": ans.kind,
            "witness_size": len(ans.witness) if ans.witness else 0,
        }
        if _audited(step, args.audit):
            truth = weighted_min_cut_oracle(range(n), present.values())
            comps = connected_components(
                range(n), [(u, v) for u, v, _ in present.values()]
            )
            if len(comps) > 1:
                agree = ans.kind == "disconnected"
                record["oracle"] = 0.0
            elif truth is None:
                agree = ans.kind != "value"
                record["oracle"] = None
            else:
                record["oracle"] = round(truth[0], 6)
                agree = (
                    ans.kind == "value"
                    and ans.value <= truth[0] * tol
                    and truth[0] <= ans.value * tol
                )
            record["agree"] = agree
            disagreements += 0 if agree else 1
        record["ms"] = round((time.perf_counter() - t0) * 1000, 3)
        report.records.append(record)
    return disagreements


def ladder_counters(ladder: RangeLadder) -> dict:
    """Per-range recourse and rebuild counters, summed over levels."""
    out: dict[str, dict] = {}
    for slot in ladder.slots:
        if slot.inst is None:
            continue
        agg = {"rebuilds": 0, "incremental_updates": 0, "detector_cuts": 0,
               "recertify_cuts": 0, "fallback_cuts": 0, "refragmentations": 0,
               "merges": 0, "splits": 0, "split_half_edges": 0}
        inst = slot.inst
        while inst is not None:
            c = inst.counters
            for f in ("rebuilds", "incremental_updates", "detector_cuts",
                      "recertify_cuts", "fallback_cuts", "refragmentations"):
                agg[f] += getattr(c, f)
            if not inst.base:
                gc = inst.graph.counters
                agg["merges"] += gc.merges
                agg["splits"] += gc.splits
                agg["split_half_edges"] += gc.split_half_edges
            inst = inst.child
        out[f"[{slot.lo},{slot.hi}]"] = agg
    return out


def cmd_run(args) -> int:
    n, edges = read_graph(args.graph, weighted=args.weighted)
    stream = read_stream(args.stream, weighted=args.weighted)
    config = {
        "graph": args.graph,
        "stream": args.stream,
        "decomposer": args.decomposer,
        "lambda_cap": args.lambda_cap,
        "audit": args.audit,
        "weighted": args.weighted,
    }
    if args.weighted:
        config.update(epsilon=args.epsilon, wmin=args.wmin,
                      wmax=args.wmax, seed=args.seed)
    report = RunReport(SCHEMA_VERSION, config)
    t0 = time.perf_counter()
    if args.weighted:
        disagreements = replay_weighted(n, edges, stream, args, report)
    else:
        disagreements = replay_unweighted(n, edges, stream, args, report)
    report.summary = {
        "updates": len(stream),
        "audited": sum(1 for r in report.records if "agree" in r),
        "disagreements": disagreements,
        "total_ms": round((time.perf_counter() - t0) * 1000, 1),
    }
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(report.to_json() + "\n")
    print(
        f"{len(stream)} updates, {report.summary['audited']} audited, "
        f"{disagreements} disagreements"
    )
    return 0 if disagreements == 0 else 1


# --------------------------------------------------------------------------
# planted-instance generator
# --------------------------------------------------------------------------


def gen_planted(n: int, lam: int, seed: int, updates: int = 100):
    """Graph with min cut exactly lam and a stream that preserves the plant.

    Two dense halves (each internally far better connected than lam) joined
    by exactly lam crossing edges; the stream toggles random edges inside
    the halves, never below a per-side connectivity floor.
    """
    if n < 4:
        raise ValueError("need n >= 4")
    rng = random.Random(seed)
    left = list(range(n // 2))
    right = list(range(n // 2, n))
    if lam >= len(left) * (len(left) - 1) // 2:
        raise ValueError("lam too large for the side size")
    edges: list[tuple[int, int]] = []
    for side in (left, right):
        # a cycle plus enough chords that every side cut is > lam
        for i, v in enumerate(side):
            edges.append((min(v, side[(i + 1) % len(side)]),
                          max(v, side[(i + 1) % len(side)])))
        want = max(0, (lam + 2) * len(side) // 2 - len(side))
        tries = 0
        while want > 0 and tries < 50 * n:
            u, v = rng.sample(side, 2)
            edges.append((min(u, v), max(u, v)))
            want -= 1
            tries += 1
    for _ in range(lam):
        u, v = rng.choice(left), rng.choice(right)
        edges.append((u, v))
    # verify the plant with the oracle; thicken sides if a sparse side cut won
    while True:
        val = min_proper_cut(range(n), edges).value
        if val == lam:
            break
        if val is None or val > lam:
            raise AssertionError("generator produced a plant above target")
        side = left if rng.random() < 0.5 else right
        u, v = rng.sample(side, 2)
        edges.append((min(u, v), max(u, v)))
    stream: list[tuple[str, int, int]] = []
    removable: list[tuple[int, int]] = []
    for _ in range(updates):
        if removable and rng.random() < 0.5:
            u, v = removable.pop(rng.randrange(len(removable)))
            stream.append(("D", u, v))
        else:
            side = left if rng.random() < 0.5 else right
            u, v = rng.sample(side, 2)
            stream.append(("I", min(u, v), max(u, v)))
            removable.append((min(u, v), max(u, v)))
    return edges, stream


def write_graph(path: str, n: int, edges) -> None:
    with open(path, "w") as fh:
        fh.write(f"{n} {len(edges)}\n")
        for e in edges:
            fh.write(" ".join(str(x) for x in e) + "\n")


def cmd_gen_planted(args) -> int:
    edges, stream = gen_planted(args.n, args.lam, args.seed, args.updates)
    write_graph(args.out_graph, args.n, edges)
    with open(args.out_stream, "w") as fh:
        for op in stream:
            fh.write(" ".join(str(x) for x in op) + "\n")
    print(f"planted lam={args.lam} graph with {len(edges)} edges, "
          f"{len(stream)} updates")
    return 0


def cmd_oracle(args) -> int:
    n, edges = read_graph(args.graph, weighted=args.weighted)
    if args.weighted:
        result = weighted_min_cut_oracle(range(n), edges)
        payload = {
            "value": None if result is None else result[0],
            "witness": None if result is None else sorted(result[1]),
        }
    else:
        comps = connected_components(range(n), edges)
        if len(comps) > 1 and n > 1:
            small = min(comps, key=lambda c: (len(c), sorted(c)))
            payload = {"value": 0, "witness": sorted(small),
                       "note": "disconnected"}
        else:
            r = min_proper_cut(range(n), edges)
            payload = {"value": r.value,
                       "witness": None if r.witness is None else sorted(r.witness)}
    print(json.dumps(payload, sort_keys=True))
    return 0


# --------------------------------------------------------------------------
# argument plumbing
# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="mincut",
        description="dynamic minimum proper cut: replay, generate, verify",
    )
    sub = p.add_subparsers(dest="cmd", required=True)

    run = sub.add_parser("run", help="replay an update stream with audits")
    run.add_argument("--graph", required=True)
    run.add_argument("--stream", required=True)
    run.add_argument("--decomposer", choices=["trivial", "conductance"],
                     default="conductance")
    run.add_argument("--lambda-cap", type=int, default=18, dest="lambda_cap")
    run.add_argument("--audit", choices=["full", "sampled", "off"],
                     default="sampled")
    run.add_argument("--report", default=None)
    run.add_argument("--weighted", action="store_true")
    run.add_argument("--epsilon", type=float, default=0.4)
    run.add_argument("--wmin", type=float, default=1.0)
    run.add_argument("--wmax", type=float, default=8.0)
    run.add_argument("--seed", type=int, default=0)
    run.set_defaults(func=cmd_run)

    gen = sub.add_parser("gen-planted", help="generate a planted instance")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--lam", type=int, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--updates", type=int, default=100)
    gen.add_argument("--out-graph", required=True, dest="out_graph")
    gen.add_argument("--out-stream", required=True, dest="out_stream")
    gen.set_defaults(func=cmd_gen_planted)

    orc = sub.add_parser("oracle", help="static oracle answers for debugging")
    orc.add_argument("--graph", required=True)
    orc.add_argument("--weighted", action="store_true")
    orc.set_defaults(func=cmd_oracle)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
