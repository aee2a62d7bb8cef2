"""Exact cycle solvers with re-checkable certificates.

Orders up to ``dp_threshold`` go through a subset DP over vertex sets; larger
orders use ordered backtracking.  Both engines return the lexicographically
smallest qualifying vertex sequence (cycles are written from their smallest
vertex), so results do not depend on the engine.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from .connectivity import is_strong
from .digraph import Digraph, DigraphError, mask_of

DEFAULT_DP_THRESHOLD = 16
MAX_DP_THRESHOLD = 24


@dataclass(frozen=True)
class CycleCertificate:
    vertices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(int(v) for v in self.vertices))

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def length(self) -> int:
        return len(self.vertices)

    def __str__(self) -> str:
        return " ".join(map(str, self.vertices))


@dataclass(frozen=True)
class CycleLengthProfile:
    order: int
    witnesses: dict[int, CycleCertificate] = field(default_factory=dict)

    @property
    def present(self) -> frozenset[int]:
        return frozenset(self.witnesses)

    @property
    def missing(self) -> list[int]:
        """Lengths in [3, n] with no cycle."""
        return [k for k in range(3, self.order + 1) if k not in self.witnesses]

    @property
    def pancyclic(self) -> bool:
        return self.order >= 3 and not self.missing


def verify_certificate(D: Digraph, c: CycleCertificate | tuple | list) -> bool:
    vs = c.vertices if isinstance(c, CycleCertificate) else tuple(c)
    if len(vs) < 2 or len(set(vs)) != len(vs):
        return False
    if any(not (isinstance(v, (int, np.integer)) and 0 <= v < D.order) for v in vs):
        return False
    return all(D.rows[vs[i]] >> vs[(i + 1) % len(vs)] & 1 for i in range(len(vs)))


def _check_threshold(dp_threshold: int) -> int:
    if not 0 <= dp_threshold <= MAX_DP_THRESHOLD:
        raise DigraphError(f"dp_threshold must lie in 0..{MAX_DP_THRESHOLD}")
    return dp_threshold


class _DP:
    """Return-path table over all vertex subsets (see ``_kernels.fill_return_table``)."""

    def __init__(self, D: Digraph):
        self.n = D.order
        self.out = D.to_array()
        self.R = np.empty(1 << self.n, np.int64)
        K.fill_return_table(self.out, self.n, self.R)

    def best(self, length: int = 0, need: int = 0, avoid: int = 0) -> CycleCertificate | None:
        buf = np.empty(self.n, np.int64)
        got = K.best_cycle(self.out, self.n, self.R, length, need, avoid, buf)
        return CycleCertificate(tuple(buf[:got])) if got else None

    def profile_mask(self) -> int:
        return int(K.length_profile(self.out, self.n, self.R))


# -- backtracking engine ------------------------------------------------------------


def _search(D: Digraph, length: int, need: int = 0, avoid: int = 0) -> CycleCertificate | None:
    """Lex-smallest cycle of exactly ``length`` vertices containing ``need`` and
    missing ``avoid``."""
    n = D.order
    rows = D.rows
    need_min = (need & -need).bit_length() - 1 if need else n - 1
    for s in range(min(need_min, n - 1) + 1):
        if avoid >> s & 1:
            continue
        allowed = D.full_mask & ~((2 << s) - 1) & ~avoid
        if (allowed | 1 << s) & need != need or (allowed.bit_count() + 1) < length:
            continue
        path = [s]
        found = _extend(rows, s, 1 << s, path, allowed, length, need)
        if found:
            return CycleCertificate(tuple(path))
    return None


def _extend(rows, s, visited, path, allowed, length, need) -> bool:
    v = path[-1]
    if len(path) == length:
        return bool(rows[v] >> s & 1) and visited & need == need
    if len(path) + (need & ~visited).bit_count() > length:
        return False
    cand = rows[v] & allowed & ~visited
    while cand:
        low = cand & -cand
        cand ^= low
        path.append(low.bit_length() - 1)
        if _extend(rows, s, visited | low, path, allowed, length, need):
            return True
        path.pop()
    return False


def _ham_search(D: Digraph) -> CycleCertificate | None:
    n = D.order
    rows, inn, full = D.rows, D.in_rows, D.full_mask
    path = [0]

    def extend(v: int, visited: int) -> bool:
        if len(path) == n:
            return bool(rows[v] & 1)
        rest = full & ~visited
        r = rest
        while r:
            low = r & -r
            r ^= low
            w = low.bit_length() - 1
            if not inn[w] & (rest | 1 << v) or not rows[w] & (rest | 1):
                return False
        cand = rows[v] & rest
        while cand:
            low = cand & -cand
            cand ^= low
            path.append(low.bit_length() - 1)
            if extend(path[-1], visited | low):
                return True
            path.pop()
        return False

    return CycleCertificate(tuple(path)) if extend(0, 1) else None


# -- public solvers -------------------------------------------------------------------


def hamiltonian_cycle(D: Digraph, dp_threshold: int = DEFAULT_DP_THRESHOLD) -> CycleCertificate | None:
    n = D.order
    if n < 2:
        raise DigraphError("hamiltonian_cycle needs order >= 2")
    if n <= _check_threshold(dp_threshold):
        return _DP(D).best(n)
    from .factor import has_cycle_factor

    if not is_strong(D) or not has_cycle_factor(D):
        return None
    return _ham_search(D)


def is_hamiltonian(D: Digraph, dp_threshold: int = DEFAULT_DP_THRESHOLD) -> bool:
    return hamiltonian_cycle(D, dp_threshold) is not None


def cycle_through_pair(D: Digraph, x: int, y: int, dp_threshold: int = DEFAULT_DP_THRESHOLD) -> CycleCertificate | None:
    """Shortest cycle through both x and y (lex-smallest among the shortest)."""
    D._check_vertex(x)
    D._check_vertex(y)
    if x == y:
        raise DigraphError("cycle_through_pair needs distinct vertices")
    need = 1 << x | 1 << y
    if D.order <= _check_threshold(dp_threshold):
        dp = _DP(D)
        for length in range(2, D.order + 1):
            c = dp.best(length, need)
            if c:
                return c
        return None
    for length in range(2, D.order + 1):
        c = _search(D, length, need)
        if c:
            return c
    return None


def longest_cycle(
    D: Digraph,
    through: int | None = None,
    avoiding: int | None = None,
    dp_threshold: int = DEFAULT_DP_THRESHOLD,
) -> CycleCertificate | None:
    need = avoid = 0
    if through is not None:
        D._check_vertex(through)
        need = 1 << through
    if avoiding is not None:
        D._check_vertex(avoiding)
        avoid = 1 << avoiding
    if through is not None and through == avoiding:
        raise DigraphError("a cycle cannot pass through and avoid the same vertex")
    if D.order <= _check_threshold(dp_threshold):
        return _DP(D).best(0, need, avoid)
    for length in range(D.order - (1 if avoid else 0), 1, -1):
        c = _search(D, length, need, avoid)
        if c:
            return c
    return None


def cycle_length_profile(D: Digraph, dp_threshold: int = DEFAULT_DP_THRESHOLD) -> CycleLengthProfile:
    """All realized cycle lengths, each with its lex-smallest witness."""
    n = D.order
    witnesses = {}
    if n <= _check_threshold(dp_threshold):
        dp = _DP(D)
        mask = dp.profile_mask()
        for length in range(2, n + 1):
            if mask >> length & 1:
                witnesses[length] = dp.best(length)
    else:
        for length in range(2, n + 1):
            c = _search(D, length)
            if c:
                witnesses[length] = c
    return CycleLengthProfile(n, witnesses)


def cycle_vertex_sets(D: Digraph) -> list[int]:
    """Masks of all vertex sets that carry a cycle (small orders only)."""
    dp = _DP(D)
    return [m for m in range(1, 1 << D.order) if K.has_cycle_on(dp.out, dp.R, m)]


__all__ = [
    "CycleCertificate",
    "CycleLengthProfile",
    "DEFAULT_DP_THRESHOLD",
    "cycle_length_profile",
    "cycle_through_pair",
    "cycle_vertex_sets",
    "hamiltonian_cycle",
    "is_hamiltonian",
    "longest_cycle",
    "mask_of",
    "verify_certificate",
]
