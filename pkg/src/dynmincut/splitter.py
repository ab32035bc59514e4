"""Deterministic (a,b)-covering slot families with slot recycling.

A family F over slots [0, N) is (a,b)-covering when for every pair of
disjoint slot sets A, B with |A| <= a, |B| <= b some member F has A <= F and
B disjoint from F.

Two backends:
  * "table": all slot subsets of size <= a. F = A itself witnesses every
    pair, so covering is immediate; used whenever C(N, <=a) fits a budget.
  * "rs": Reed-Solomon separating hashes. Slot s is encoded as a degree-d
    polynomial over F_q (its base-q digits); member (i, T) is the preimage
    {s : poly_s(i) in T} with |T| <= a. Two distinct slots collide in at
    most d positions, so with q > a*b*d some position separates h(A) from
    h(B) and (i, h_i(A)) is a witness.

Slot bookkeeping (free-list, assign/free, rebuild at doubling) lives here
as well; the covering property is set-theoretic and survives arbitrary
assign/free interleavings.
"""

from __future__ import annotations

import heapq
import itertools
from math import comb, isqrt
from typing import Iterator, Optional


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in range(2, isqrt(p) + 1):
        if p % q == 0:
            return False
    return True


def _next_prime(p: int) -> int:
    while not _is_prime(p):
        p += 1
    return p


class _RSBackend:
    def __init__(self, N: int, a: int, b: int) -> None:
        self.N, self.a, self.b = N, a, b
        best: Optional[tuple[int, int, int]] = None  # (family_size, q, d)
        for d in range(1, 8):
            q = 2
            while q ** (d + 1) < N:
                q += 1
            q = _next_prime(max(q, a * b * d + 1, a + 1))
            size = q * sum(comb(q, j) for j in range(min(a, q) + 1))
            if best is None or size < best[0]:
                best = (size, q, d)
        assert best is not None
        self.size, self.q, self.d = best

    def _hash(self, s: int, i: int) -> int:
        # evaluate the base-q digit polynomial of s at point i
        acc, power = 0, 1
        for _ in range(self.d + 1):
            acc = (acc + (s % self.q) * power) % self.q
            s //= self.q
            power = (power * i) % self.q
        return acc

    def witness(self, A: frozenset[int], B: frozenset[int]) -> frozenset[int]:
        for i in range(self.q):
            ha = {self._hash(s, i) for s in A}
            if all(self._hash(s, i) not in ha for s in B):
                return frozenset(s for s in range(self.N) if self._hash(s, i) in ha)
        raise AssertionError("RS parameters violate the separation bound")

    def sets(self) -> Iterator[frozenset[int]]:
        for i in range(self.q):
            buckets: dict[int, list[int]] = {}
            for s in range(self.N):
                buckets.setdefault(self._hash(s, i), []).append(s)
            for size in range(self.a + 1):
                for T in itertools.combinations(sorted(buckets), size):
                    yield frozenset(s for t in T for s in buckets[t])


class ColoringFamily:
    """(a,b)-covering family over N slots with edge<->slot bookkeeping."""

    TABLE_BUDGET = 100_000

    def __init__(self, N: int, a: int, b: int, backend: Optional[str] = None) -> None:
        if N < 1 or a < 0 or b < 0:
            raise ValueError("need N >= 1 and a, b >= 0")
        if a > N or b > N:
            raise ValueError("a and b must each be at most N")
        self.N, self.a, self.b = N, a, b
        table_size = sum(comb(N, j) for j in range(a + 1))
        if backend is None:
            backend = "table" if table_size <= self.TABLE_BUDGET else "rs"
        self.backend = backend
        self._rs = _RSBackend(N, a, b) if backend == "rs" else None
        self._free: list[int] = list(range(N))
        heapq.heapify(self._free)
        self.slot_of_edge: dict[int, int] = {}
        self.edge_of_slot: dict[int, int] = {}
        self.rebuild_count = 0

    # --- family surface ---------------------------------------------------

    def sets(self) -> Iterator[frozenset[int]]:
        """Materialized members; intended for small parameters only."""
        if self.backend == "table":
            for size in range(self.a + 1):
                for T in itertools.combinations(range(self.N), size):
                    yield frozenset(T)
        else:
            assert self._rs is not None
            yield from self._rs.sets()

    def covering_witness(self, A: frozenset[int], B: frozenset[int]) -> frozenset[int]:
        """A member F with A <= F, B & F = 0; raises on contract violation."""
        A, B = frozenset(A), frozenset(B)
        if len(A) > self.a or len(B) > self.b or (A & B):
            raise ValueError("pair outside the (a,b) covering contract")
        if self.backend == "table":
            return A
        assert self._rs is not None
        return self._rs.witness(A, B)

    # --- slot bookkeeping ---------------------------------------------------

    @property
    def free_count(self) -> int:
        return len(self._free)

    def assign_slot(self, eid: int) -> int:
        if eid in self.slot_of_edge:
            raise KeyError(f"edge {eid} already holds a slot")
        if not self._free:
            self._rebuild(2 * (len(self.slot_of_edge) + 1))
        slot = heapq.heappop(self._free)
        self.slot_of_edge[eid] = slot
        self.edge_of_slot[slot] = eid
        return slot

    def free_slot(self, eid: int) -> None:
        slot = self.slot_of_edge.pop(eid, None)
        if slot is None:
            raise KeyError(f"edge {eid} holds no slot (double free?)")
        del self.edge_of_slot[slot]
        heapq.heappush(self._free, slot)

    def _rebuild(self, new_n: int) -> None:
        """Rebuild at doubled universe; existing edges get compact slots."""
        edges = sorted(self.slot_of_edge)
        rebuilds = self.rebuild_count
        new_n = max(new_n, len(edges), 1)
        self.__class__.__init__(  # re-init in place, preserving type
            self, new_n, min(self.a, new_n), min(self.b, new_n), backend=None
        )
        for i, e in enumerate(edges):
            self.slot_of_edge[e] = i
            self.edge_of_slot[i] = e
        self._free = list(range(len(edges), new_n))
        heapq.heapify(self._free)
        self.rebuild_count = rebuilds + 1


def build_family(N: int, a: int, b: int, backend: Optional[str] = None) -> ColoringFamily:
    return ColoringFamily(N, a, b, backend=backend)
