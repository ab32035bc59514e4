"""Weighted min cut by truncated-binomial edge sampling over a guess ladder.

Each ladder index i carries a guess lam_i = wmin * 1.1**i for the weighted
min cut. An edge of weight w is replaced by Y parallel edges, where Y is a
binomial sample over the rounded weight floor(w * x_i) with success
probability p_i, truncated just above the sampled-world bound; the scale
factors are chosen so a cut of weight about lam_i lands near 54*ln(n)/eps^2
sampled edges. Scanning indices in increasing order, the first sampled min
cut that lands inside [lam_min_s, lam_max_s] is returned divided by
p_i * x_i, which approximates the weighted min cut within (1+eps)**4 with
high probability.

This is the toolkit's only randomized component; every draw comes from a
deterministic generator seeded per (seed, index, edge id), so replays are
bit-reproducible for a fixed seed.
"""

from __future__ import annotations

import dataclasses
import math
import random
from fractions import Fraction
from typing import Iterable, Optional

from .oracle import stoer_wagner_weighted

__all__ = [
    "SampleSpec",
    "make_specs",
    "sampled_bounds",
    "sample_edge",
    "weighted_min_cut_oracle",
    "WeightedAnswer",
    "WeightedLadder",
]

EPS_FLOOR = 0.05  # below this the sampled-world bounds blow up pointlessly

# inverse-CDF draws this close to a bucket boundary are re-decided with
# exact rational arithmetic
_BOUNDARY_SLACK = 1e-9


def sampled_bounds(n: int, eps: float) -> tuple[float, float]:
    """(lam_min_s, lam_max_s) of the sampled unweighted world."""
    base = 54.0 * math.log(n) / (eps * eps)
    return (1.0 - eps) ** 2 * base, 1.1 * (1.0 + eps) * base


@dataclasses.dataclass(frozen=True)
class SampleSpec:
    """Sampling parameters for one ladder guess.

    lam_i is the cut-weight guess, x_i the weight-rounding scale, p_i the
    per-unit sampling probability and cap the truncation threshold: a draw
    never exceeds cap + 1.
    """

    index: int
    n: int
    eps: float
    lam_i: float
    x_i: int
    p_i: float
    cap: int
    seed: int

    @property
    def scale(self) -> float:
        """Sampled-to-weighted conversion factor 1 / (p_i * x_i)."""
        return 1.0 / (self.p_i * self.x_i)


def make_specs(
    n: int, eps: float, wmin: float, wmax: float, seed: int
) -> list[SampleSpec]:
    """Ladder of sampling specs covering cut weights in [wmin, n^2 * wmax]."""
    if not (0 < wmin <= wmax):
        raise ValueError("need 0 < wmin <= wmax")
    if eps < EPS_FLOOR:
        raise ValueError(f"eps must be at least {EPS_FLOOR}")
    if n < 2:
        raise ValueError("need at least two vertices")
    _, lam_max_s = sampled_bounds(n, eps)
    cap = math.floor(lam_max_s) + 1
    specs: list[SampleSpec] = []
    i = 0
    while True:
        lam_i = wmin * 1.1 ** i
        x_i = math.ceil(n * n / (eps * lam_i))
        p_i = min(1.0, 54.0 * math.log(n) / (eps * eps * lam_i * x_i))
        specs.append(SampleSpec(i, n, eps, lam_i, x_i, p_i, cap, seed))
        if lam_i > n * n * wmax:
            return specs
        i += 1


def _exact_cdf_prefix(w_hat: int, p: Fraction, k_hi: int) -> Fraction:
    """P(X <= k_hi) for X ~ Binomial(w_hat, p), exact."""
    q = 1 - p
    term = q ** w_hat
    total = term
    for k in range(k_hi):
        term = term * (w_hat - k) * p / ((k + 1) * q)
        total += term
    return total


def sample_edge(w: float, spec: SampleSpec, rand: float) -> int:
    """Truncated-binomial multiplicity for an edge of weight w.

    Inverse-CDF over Y = min(X, cap + 1) with X ~ Binomial(floor(w * x_i),
    p_i): the smallest k whose cumulative pmf exceeds rand. The cumulative
    sum runs in floating point with a log-space pmf recurrence; a draw
    landing within 1e-9 of a bucket boundary is re-decided exactly in
    rationals. When the distribution's mass sits far above the truncation
    point (beyond twelve standard deviations) the truncated value is
    returned outright.
    """
    if w < 0:
        raise ValueError("negative weight")
    if not (0 <= rand < 1):
        raise ValueError("rand must lie in [0, 1)")
    w_hat = math.floor(w * spec.x_i)
    if w_hat == 0:
        return 0
    p = spec.p_i
    if p >= 1.0:
        return min(w_hat, spec.cap + 1)
    cap = spec.cap
    mu = w_hat * p
    sigma = math.sqrt(mu * (1.0 - p))
    if mu - 12.0 * sigma - 12.0 > cap:
        return cap + 1
    log_p, log_q = math.log(p), math.log1p(-p)
    log_pmf = w_hat * log_q  # k = 0
    cum = math.exp(log_pmf)
    k = 0
    while cum <= rand and k <= min(cap, w_hat):
        if abs(cum - rand) < _BOUNDARY_SLACK:
            exact = _exact_cdf_prefix(w_hat, Fraction(p), k)
            if exact > Fraction(rand):
                return k
        if k == min(cap, w_hat):
            break
        log_pmf += math.log(w_hat - k) + log_p - math.log(k + 1) - log_q
        cum += math.exp(log_pmf)
        k += 1
    if cum > rand:
        return k
    return min(w_hat, cap + 1)


# --------------------------------------------------------------------------
# weighted oracle (reference) and the ladder front end
# --------------------------------------------------------------------------


def _weighted_components(
    vertices: Iterable[int], edges: Iterable[tuple[int, int, float]]
) -> list[frozenset[int]]:
    parent: dict[int, int] = {v: v for v in vertices}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v, w in edges:
        if w > 0:
            parent[find(u)] = find(v)
    groups: dict[int, set[int]] = {}
    for v in parent:
        groups.setdefault(find(v), set()).add(v)
    return sorted((frozenset(g) for g in groups.values()),
                  key=lambda c: sorted(c))


def weighted_min_cut_oracle(
    vertices: Iterable[int], edges: Iterable[tuple[int, int, float]]
) -> Optional[tuple[float, frozenset[int]]]:
    """Smallest positive cut weight over all components, with a witness."""
    vertices = sorted(set(vertices))
    edges = list(edges)
    best: Optional[tuple[float, frozenset[int]]] = None
    for comp in _weighted_components(vertices, edges):
        if len(comp) < 2:
            continue
        adj: dict[int, dict[int, float]] = {v: {} for v in comp}
        for u, v, w in edges:
            if u in comp and v in comp and w > 0:
                adj[u][v] = adj[u].get(v, 0.0) + w
                adj[v][u] = adj[v].get(u, 0.0) + w
        val, side = stoer_wagner_weighted(comp, adj)
        if best is None or val < best[0]:
            best = (val, side)
    return best


@dataclasses.dataclass(frozen=True)
class WeightedAnswer:
    kind: str  # "value" | "disconnected" | "no-index"
    value: Optional[float]
    witness: Optional[frozenset[int]]
    index: Optional[int] = None


class WeightedLadder:
    """Approximate dynamic weighted min cut via per-guess edge sampling.

    Every update is fanned out to every guess index: each index keeps its
    own sampled multiplicity per edge, drawn once from a generator seeded
    by (seed, index, edge id) when the edge arrives — a weight change is a
    delete plus an insert and therefore a fresh draw.
    """

    def __init__(
        self,
        vertices: Iterable[int],
        eps: float,
        wmin: float,
        wmax: float,
        seed: int = 0,
    ) -> None:
        self.vertices = set(vertices)
        self.eps = eps
        self.specs = make_specs(len(self.vertices), eps, wmin, wmax, seed)
        self.lam_min_s, self.lam_max_s = sampled_bounds(len(self.vertices), eps)
        self.seed = seed
        self.edges: dict[int, tuple[int, int, float]] = {}
        self.samples: list[dict[int, int]] = [{} for _ in self.specs]
        self._next_eid = 0

    def insert(self, u: int, v: int, w: float) -> int:
        if u == v:
            raise ValueError("self-loops are not allowed")
        if w < 0:
            raise ValueError("negative weight")
        eid = self._next_eid
        self._next_eid += 1
        self.edges[eid] = (u, v, w)
        for spec, bucket in zip(self.specs, self.samples):
            rand = random.Random(f"{self.seed}:{spec.index}:{eid}").random()
            y = sample_edge(w, spec, rand)
            if y:
                bucket[eid] = y
        return eid

    def delete(self, eid: int) -> tuple[int, int, float]:
        uvw = self.edges.pop(eid)
        for bucket in self.samples:
            bucket.pop(eid, None)
        return uvw

    def query(self) -> WeightedAnswer:
        comps = _weighted_components(
            self.vertices, [(u, v, w) for u, v, w in self.edges.values()]
        )
        if len(comps) > 1:
            witness = min(comps, key=lambda c: (len(c), sorted(c)))
            return WeightedAnswer("disconnected", 0.0, witness)
        for spec, bucket in zip(self.specs, self.samples):
            result = weighted_min_cut_oracle(
                self.vertices,
                [(self.edges[eid][0], self.edges[eid][1], float(y))
                 for eid, y in bucket.items()],
            )
            if result is None:
                continue
            val, side = result
            if self.lam_min_s <= val <= self.lam_max_s:
                return WeightedAnswer(
                    "value", val * spec.scale, side, spec.index
                )
        return WeightedAnswer("no-index", None, None)
