"""Strong components, vertex connectivity by unit-capacity max-flow, length-two paths."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .digraph import Digraph, DigraphError, bits_of


@dataclass(frozen=True)
class ConnectivityResult:
    kappa: int
    separating_set: tuple[int, ...] | None = None


def _reach(adj: tuple[int, ...], alive: int, s: int) -> int:
    seen = 1 << s
    frontier = seen
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        new = adj[low.bit_length() - 1] & alive & ~seen
        seen |= new
        frontier |= new
    return seen


def strong_within(D: Digraph, alive: int) -> bool:
    """Is the subdigraph induced by the vertex mask ``alive`` strongly connected?"""
    if alive == 0:
        return True
    s = (alive & -alive).bit_length() - 1
    return _reach(D.rows, alive, s) == alive and _reach(D.in_rows, alive, s) == alive


def is_strong(D: Digraph) -> bool:
    return strong_within(D, D.full_mask)


def strong_components(D: Digraph) -> list[list[int]]:
    """Strong components, each sorted, listed by smallest member."""
    left = D.full_mask
    comps = []
    while left:
        s = (left & -left).bit_length() - 1
        comp = _reach(D.rows, left, s) & _reach(D.in_rows, left, s)
        comps.append(bits_of(comp))
        left &= ~comp
    return comps


def _local_connectivity(D: Digraph, x: int, y: int, bound: int) -> tuple[int, int]:
    """Max number of internally disjoint x->y paths (capped at ``bound``) and the
    mask of vertices on the source side of a minimum cut.

    Vertex v is split into v_in = 2v and v_out = 2v+1 joined by a unit arc; arc
    u->v becomes u_out -> v_in with capacity n.  Source x_out, sink y_in.
    """
    n = D.order
    big = n
    cap: dict[tuple[int, int], int] = {}
    adj: list[list[int]] = [[] for _ in range(2 * n)]

    def add(a: int, b: int, c: int) -> None:
        if (a, b) not in cap:
            adj[a].append(b)
            adj[b].append(a)
            cap.setdefault((b, a), 0)
        cap[(a, b)] = cap.get((a, b), 0) + c

    for v in range(n):
        if v not in (x, y):
            add(2 * v, 2 * v + 1, 1)
    for u, v in D.arcs():
        add(2 * u + 1, 2 * v, big)

    src, sink = 2 * x + 1, 2 * y
    flow = 0
    while flow < bound:
        parent = {src: src}
        q = deque([src])
        while q and sink not in parent:
            a = q.popleft()
            for b in adj[a]:
                if b not in parent and cap[(a, b)] > 0:
                    parent[b] = a
                    q.append(b)
        if sink not in parent:
            break
        b = sink
        while b != src:
            a = parent[b]
            cap[(a, b)] -= 1
            cap[(b, a)] += 1
            b = a
        flow += 1
    # residual reachability from the source gives the source side of a min cut
    seen = {src}
    q = deque([src])
    while q:
        a = q.popleft()
        for b in adj[a]:
            if b not in seen and cap[(a, b)] > 0:
                seen.add(b)
                q.append(b)
    side = 0
    for v in range(n):
        if 2 * v in seen and 2 * v + 1 not in seen:
            side |= 1 << v
    return flow, side


def vertex_connectivity(D: Digraph) -> ConnectivityResult:
    """Vertex connectivity via Menger: the minimum, over ordered pairs (x, y) with
    no arc x->y, of the number of internally disjoint x->y paths.

    Complete digraphs get ``n - 1`` and no separator.  Among minimum separators
    found at the pairs achieving the minimum, the lexicographically smallest is
    returned.
    """
    n = D.order
    if n < 2:
        raise DigraphError("vertex connectivity needs order >= 2")
    best = n - 1
    seps: list[tuple[int, ...]] = []
    for x in range(n):
        for y in range(n):
            if x == y or D.rows[x] >> y & 1:
                continue
            flow, side = _local_connectivity(D, x, y, best + 1)
            if flow < best:
                best = flow
                seps = []
            if flow == best:
                seps.append(tuple(bits_of(side)))
    if not seps:
        return ConnectivityResult(n - 1, None)
    return ConnectivityResult(best, min(seps))


def is_k_strong(D: Digraph, k: int) -> bool:
    if k < 1:
        raise DigraphError("k must be at least 1")
    if D.order < k + 1:
        return False
    if k == 1:
        return is_strong(D)
    if k == 2:
        # cheaper than max-flow for the case the harness cares about
        full = D.full_mask
        return is_strong(D) and all(strong_within(D, full & ~(1 << v)) for v in range(D.order))
    return vertex_connectivity(D).kappa >= k


def two_path_count(D: Digraph, x: int, y: int) -> int:
    """Number of internally disjoint x->y paths of length two, i.e. |N+(x) & N-(y)|."""
    D._check_vertex(x)
    D._check_vertex(y)
    if x == y:
        raise DigraphError("two_path_count needs distinct vertices")
    return (D.rows[x] & D.in_rows[y]).bit_count()


def has_two_path_between(D: Digraph, u: int, v: int) -> bool:
    return two_path_count(D, u, v) >= 1 or two_path_count(D, v, u) >= 1
