"""Cycle factors through bipartite matching, and partition certificates when none exists."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .cycles import CycleCertificate, verify_certificate
from .digraph import Digraph, bits_of, mask_of


class NoWitnessError(RuntimeError):
    """Raised when a partition certificate cannot be produced."""


@dataclass(frozen=True)
class PartitionWitness:
    Y: frozenset[int]
    Z: frozenset[int]
    R1: frozenset[int]
    R2: frozenset[int]

    def __post_init__(self):
        for name in ("Y", "Z", "R1", "R2"):
            object.__setattr__(self, name, frozenset(int(v) for v in getattr(self, name)))

    def to_dict(self) -> dict[str, list[int]]:
        return {name: sorted(getattr(self, name)) for name in ("Y", "Z", "R1", "R2")}

    def __str__(self) -> str:
        return "\n".join(f"{k}: {' '.join(map(str, v))}" for k, v in self.to_dict().items())


@dataclass(frozen=True)
class CycleFactor:
    cycles: tuple[CycleCertificate, ...]

    def __str__(self) -> str:
        return "\n".join(str(c) for c in self.cycles)


def maximum_matching(D: Digraph) -> list[int]:
    """Maximum matching of the split model; entry v is the tail matched to head v, or -1.

    Heads are augmented in tail order by breadth-first alternating search.
    """
    n = D.order
    match_r = [-1] * n
    match_l = [-1] * n
    for u in range(n):
        from_left: dict[int, int] = {}
        seen = 0
        q = deque([u])
        found = -1
        while q and found < 0:
            x = q.popleft()
            for v in bits_of(D.rows[x] & ~seen):
                seen |= 1 << v
                from_left[v] = x
                if match_r[v] < 0:
                    found = v
                    break
                q.append(match_r[v])
        v = found
        while v >= 0:
            x = from_left[v]
            nxt = match_l[x]
            match_r[v], match_l[x] = x, v
            v = -1 if x == u else nxt
    return match_r


def has_cycle_factor(D: Digraph) -> bool:
    return -1 not in maximum_matching(D)


def extract_cycle_factor(D: Digraph) -> CycleFactor | None:
    """Decompose the permutation given by a perfect matching into cycles."""
    match_r = maximum_matching(D)
    if -1 in match_r:
        return None
    succ = [0] * D.order
    for head, tail in enumerate(match_r):
        succ[tail] = head
    seen = [False] * D.order
    cycles = []
    for start in range(D.order):
        if seen[start]:
            continue
        cyc = []
        v = start
        while not seen[v]:
            seen[v] = True
            cyc.append(v)
            v = succ[v]
        cycles.append(CycleCertificate(tuple(cyc)))
    return CycleFactor(tuple(cycles))


def verify_cycle_factor(D: Digraph, F: CycleFactor) -> bool:
    covered = []
    for c in F.cycles:
        if not verify_certificate(D, c):
            return False
        covered.extend(c.vertices)
    return sorted(covered) == list(range(D.order))


def verify_partition_witness(D: Digraph, w: PartitionWitness) -> bool:
    parts = [w.Y, w.Z, w.R1, w.R2]
    if sum(len(p) for p in parts) != D.order or set().union(*parts) != set(range(D.order)):
        return False
    if len(w.Y) <= len(w.Z):
        return False
    Y, R1, R2 = mask_of(w.Y), mask_of(w.R1), mask_of(w.R2)
    for y in w.Y:
        if (D.rows[y] | D.in_rows[y]) & Y:
            return False
        if D.rows[y] & R1:
            return False
    return all(not D.rows[r] & (R1 | Y) for r in w.R2)


def extract_partition_witness(D: Digraph) -> PartitionWitness:
    """Certificate that no cycle factor exists.

    Let S be the tails reachable from unmatched tails by alternating paths of a
    maximum matching and T = N+(S), so |T| < |S|.  Then Y = S - T, Z = T - S,
    R2 = S & T and R1 = the rest satisfy every required condition: arcs leaving
    S end in T, which keeps Y independent and empties A(Y->R1) and A(R2->R1+Y).
    Vertices of R2 are then shifted into Z, lowest first, while |Y| > |Z| holds.
    """
    n = D.order
    match_r = maximum_matching(D)
    if -1 not in match_r:
        raise NoWitnessError("digraph has a cycle factor; no partition witness exists")
    matched_tails = {t for t in match_r if t >= 0}
    S = 0
    T = 0
    q = deque(u for u in range(n) if u not in matched_tails)
    for u in q:
        S |= 1 << u
    while q:
        x = q.popleft()
        for v in bits_of(D.rows[x] & ~T):
            T |= 1 << v
            t = match_r[v]
            if t >= 0 and not S >> t & 1:
                S |= 1 << t
                q.append(t)
    full = D.full_mask
    Y, Z, R2 = S & ~T, T & ~S, S & T
    # Z is unconstrained, so R2 vertices may move there while |Y| > |Z| survives
    for v in bits_of(R2):
        if Y.bit_count() <= Z.bit_count() + 1:
            break
        R2 &= ~(1 << v)
        Z |= 1 << v
    w = PartitionWitness(Y=bits_of(Y), Z=bits_of(Z), R1=bits_of(full & ~(S | T)), R2=bits_of(R2))
    if not verify_partition_witness(D, w):
        raise NoWitnessError(f"derived partition failed verification: {w.to_dict()}")
    return w


def find_partition_witness_bruteforce(D: Digraph) -> PartitionWitness | None:
    """Exhaustive search over (Y, Z, R1, R2) partitions; independent of matching."""
    out = D.to_array()
    w = np.zeros(4, np.int64)
    if not K.partition_oracle(out, K.make_in_rows(out, D.order), D.order, w):
        return None
    return PartitionWitness(*(bits_of(int(m)) for m in w))
