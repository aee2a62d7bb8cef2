"""Loop-free simple digraphs stored as one out-neighbour bitmask per vertex."""

from __future__ import annotations

import operator
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

MAX_ORDER = 64


class DigraphError(ValueError):
    """Invalid vertex, order or construction request."""


class ParseError(DigraphError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
        self.line = line
        self.column = column


class DegreeSummary(NamedTuple):
    out_degree: int
    in_degree: int
    total_degree: int


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_of(mask: int) -> list[int]:
    return list(_bits(mask))


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Digraph:
    """Digraph on vertices ``0..order-1``.

    ``rows[u]`` has bit ``v`` set iff the arc ``u -> v`` is present.  Instances
    are immutable and hashable.
    """

    order: int
    rows: tuple[int, ...]

    def __post_init__(self):
        n = self.order
        if not isinstance(n, int) or n < 1:
            raise DigraphError(f"order must be a positive integer, got {n!r}")
        if n > MAX_ORDER:
            raise DigraphError(f"order {n} exceeds the supported maximum of {MAX_ORDER}")
        if len(self.rows) != n:
            raise DigraphError(f"expected {n} rows, got {len(self.rows)}")
        full = (1 << n) - 1
        for u, row in enumerate(self.rows):
            if row < 0 or row & ~full:
                raise DigraphError(f"row {u} has bits outside 0..{n - 1}")
            if row >> u & 1:
                raise DigraphError(f"loop at vertex {u}")

    # -- construction -----------------------------------------------------

    @classmethod
    def from_arcs(cls, order: int, arcs: Iterable[tuple[int, int]]) -> "Digraph":
        rows = [0] * order
        for u, v in arcs:
            u, v = operator.index(u), operator.index(v)
            if not (0 <= u < order and 0 <= v < order):
                raise DigraphError(f"arc ({u}, {v}) out of range for order {order}")
            if u == v:
                raise DigraphError(f"loop at vertex {u}")
            rows[u] |= 1 << v
        return cls(order, tuple(rows))

    @classmethod
    def from_matrix(cls, matrix) -> "Digraph":
        a = np.asarray(matrix, dtype=bool)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DigraphError("adjacency matrix must be square")
        rows = tuple(int(sum(1 << int(v) for v in np.flatnonzero(a[u]))) for u in range(a.shape[0]))
        return cls(a.shape[0], rows)

    @classmethod
    def from_array(cls, rows) -> "Digraph":
        """Build from a sequence of integer row masks (e.g. a numpy int64 row)."""
        return cls(len(rows), tuple(int(r) for r in rows))

    # -- basic queries ----------------------------------------------------

    @property
    def full_mask(self) -> int:
        return (1 << self.order) - 1

    @cached_property
    def in_rows(self) -> tuple[int, ...]:
        inn = [0] * self.order
        for u, row in enumerate(self.rows):
            for v in _bits(row):
                inn[v] |= 1 << u
        return tuple(inn)

    @cached_property
    def arc_count(self) -> int:
        return sum(row.bit_count() for row in self.rows)

    def _check_vertex(self, x: int) -> None:
        if not isinstance(x, (int, np.integer)) or not 0 <= x < self.order:
            raise DigraphError(f"vertex {x!r} out of range 0..{self.order - 1}")

    def arc(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            raise DigraphError("arc query needs two distinct vertices")
        return bool(self.rows[u] >> v & 1)

    def adjacent(self, u: int, v: int) -> bool:
        return self.arc(u, v) or self.arc(v, u)

    def arcs(self) -> Iterator[tuple[int, int]]:
        for u, row in enumerate(self.rows):
            for v in _bits(row):
                yield u, v

    def out_neighbours(self, x: int) -> list[int]:
        self._check_vertex(x)
        return bits_of(self.rows[x])

    def in_neighbours(self, x: int) -> list[int]:
        self._check_vertex(x)
        return bits_of(self.in_rows[x])

    def degrees(self, x: int, restrict_to: Iterable[int] | None = None) -> DegreeSummary:
        """Out-, in- and total degree of ``x``, optionally counted inside a vertex subset."""
        self._check_vertex(x)
        if restrict_to is None:
            mask = self.full_mask
        else:
            vs = list(restrict_to)
            for v in vs:
                self._check_vertex(v)
            mask = mask_of(vs)
        dout = (self.rows[x] & mask).bit_count()
        din = (self.in_rows[x] & mask).bit_count()
        return DegreeSummary(dout, din, dout + din)

    def degree(self, x: int) -> int:
        return self.rows[x].bit_count() + self.in_rows[x].bit_count()

    def non_adjacent_pairs(self) -> list[tuple[int, int]]:
        """Unordered non-adjacent pairs ``(x, y)`` with ``x < y``, in lexicographic order."""
        out = []
        for x in range(self.order):
            nb = self.rows[x] | self.in_rows[x]
            for y in range(x + 1, self.order):
                if not nb >> y & 1:
                    out.append((x, y))
        return out

    def induced_subdigraph(self, vertices: Iterable[int]) -> tuple["Digraph", dict[int, int]]:
        """Subdigraph induced by ``vertices``; returns it with the old->new label map.

        New labels follow the increasing order of the old ones.
        """
        vs = sorted(set(vertices))
        if not vs:
            raise DigraphError("induced subdigraph needs a nonempty vertex set")
        for v in vs:
            self._check_vertex(v)
        relabel = {old: new for new, old in enumerate(vs)}
        rows = []
        for old in vs:
            row = 0
            for w in _bits(self.rows[old]):
                if w in relabel:
                    row |= 1 << relabel[w]
            rows.append(row)
        return Digraph(len(vs), tuple(rows)), relabel

    def delete(self, vertices: Iterable[int]) -> "Digraph":
        gone = set(vertices)
        return self.induced_subdigraph(v for v in range(self.order) if v not in gone)[0]

    def reverse(self) -> "Digraph":
        return Digraph(self.order, self.in_rows)

    def symmetrized(self) -> "Digraph":
        """Digraph with both arcs on every adjacent pair (the underlying graph as a digraph)."""
        return Digraph(self.order, tuple(r | i for r, i in zip(self.rows, self.in_rows)))

    def with_arcs(self, add: Iterable[tuple[int, int]] = (), remove: Iterable[tuple[int, int]] = ()) -> "Digraph":
        rows = list(self.rows)
        for u, v in remove:
            rows[u] &= ~(1 << v)
        for u, v in add:
            if u == v:
                raise DigraphError(f"loop at vertex {u}")
            rows[u] |= 1 << v
        return Digraph(self.order, tuple(rows))

    def relabel(self, perm: Sequence[int]) -> "Digraph":
        """Image of this digraph under the bijection ``v -> perm[v]``."""
        if sorted(perm) != list(range(self.order)):
            raise DigraphError("relabeling must be a permutation of the vertices")
        return Digraph.from_arcs(self.order, ((perm[u], perm[v]) for u, v in self.arcs()))

    def to_array(self) -> np.ndarray:
        if self.order > 62:
            raise DigraphError("kernel fast path supports order <= 62")
        return np.array(self.rows, dtype=np.int64)

    def __str__(self) -> str:
        return serialize(self)


# -- text formats ------------------------------------------------------------


def serialize(D: Digraph) -> str:
    """DG format: header ``DG n`` then one 0/1 row per vertex."""
    lines = [f"DG {D.order}"]
    for row in D.rows:
        lines.append("".join("1" if row >> v & 1 else "0" for v in range(D.order)))
    return "\n".join(lines) + "\n"


def serialize_arcs(D: Digraph) -> str:
    lines = [f"DGA {D.order}"]
    lines.extend(f"{u} {v}" for u, v in D.arcs())
    return "\n".join(lines) + "\n"


def parse(text: str) -> Digraph:
    """Read a digraph in DG (matrix) or DGA (arc list) format.

    Blank lines and ``#`` comments are ignored.  In DGA format vertices may be
    given as names; they are numbered in order of first appearance.
    """
    lines = [(i + 1, ln.split("#", 1)[0].strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln) for i, ln in lines if ln]
    if not lines:
        raise ParseError("empty input", 1)
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] not in ("DG", "DGA"):
        raise ParseError(f"malformed header {header!r}, expected 'DG n' or 'DGA n'", lineno, 1)
    try:
        n = int(parts[1])
    except ValueError:
        raise ParseError(f"order {parts[1]!r} is not an integer", lineno, len(parts[0]) + 2) from None
    if not 1 <= n <= MAX_ORDER:
        raise ParseError(f"order {n} outside 1..{MAX_ORDER}", lineno, len(parts[0]) + 2)
    body = lines[1:]
    if parts[0] == "DG":
        return _parse_matrix(n, body)
    return _parse_arc_list(n, body)


def _parse_matrix(n: int, body: list[tuple[int, str]]) -> Digraph:
    if len(body) != n:
        where = body[n][0] if len(body) > n else (body[-1][0] + 1 if body else 2)
        raise ParseError(f"expected {n} matrix rows, got {len(body)} (matrix is not square)", where)
    rows = []
    for u, (lineno, ln) in enumerate(body):
        if len(ln) != n:
            raise ParseError(f"row {u} has {len(ln)} entries, expected {n} (matrix is not square)", lineno)
        row = 0
        for v, ch in enumerate(ln):
            if ch not in "01":
                raise ParseError(f"invalid character {ch!r}", lineno, v + 1)
            if ch == "1":
                if u == v:
                    raise ParseError(f"loop at vertex {u}", lineno, v + 1)
                row |= 1 << v
        rows.append(row)
    return Digraph(n, tuple(rows))


def _parse_arc_list(n: int, body: list[tuple[int, str]]) -> Digraph:
    names: dict[str, int] = {}
    numeric = all(tok.isdigit() for _, ln in body for tok in ln.split())

    def label(tok: str, lineno: int, col: int) -> int:
        if numeric:
            v = int(tok)
            if v >= n:
                raise ParseError(f"vertex {v} out of range 0..{n - 1}", lineno, col)
            return v
        if tok not in names:
            if len(names) == n:
                raise ParseError(f"more than {n} distinct vertex names", lineno, col)
            names[tok] = len(names)
        return names[tok]

    arcs = []
    for lineno, ln in body:
        toks = ln.split()
        if len(toks) != 2:
            raise ParseError(f"arc line must hold exactly two vertices, got {ln!r}", lineno, 1)
        u = label(toks[0], lineno, 1)
        v = label(toks[1], lineno, len(toks[0]) + 2)
        if u == v:
            raise ParseError(f"loop at vertex {toks[0]}", lineno, 1)
        arcs.append((u, v))
    return Digraph.from_arcs(n, arcs)


def read(path) -> Digraph:
    with open(path) as fh:
        return parse(fh.read())


def write(D: Digraph, path) -> None:
    with open(path, "w") as fh:
        fh.write(serialize(D))


# -- isomorphism --------------------------------------------------------------


def is_isomorphic(D1: Digraph, D2: Digraph) -> tuple[bool, dict[int, int] | None]:
    """Backtracking isomorphism test refined by (out, in) degree classes.

    Returns ``(True, mapping)`` with ``mapping[v1] = v2`` when an arc-preserving
    bijection exists, else ``(False, None)``.  Intended for small orders.
    """
    n = D1.order
    if n != D2.order or D1.arc_count != D2.arc_count:
        return False, None

    def signature(D: Digraph, v: int) -> tuple[int, int, int]:
        return D.rows[v].bit_count(), D.in_rows[v].bit_count(), (D.rows[v] & D.in_rows[v]).bit_count()

    sig1 = [signature(D1, v) for v in range(n)]
    sig2 = [signature(D2, v) for v in range(n)]
    if sorted(sig1) != sorted(sig2):
        return False, None

    by_sig: dict[tuple, list[int]] = {}
    for v in range(n):
        by_sig.setdefault(sig2[v], []).append(v)
    # rarest class first, then vertices adjacent to already-placed ones
    order = sorted(range(n), key=lambda v: (len(by_sig[sig1[v]]), v))
    mapping: dict[int, int] = {}
    used = 0

    def consistent(v1: int, v2: int) -> bool:
        for a1, a2 in mapping.items():
            if (D1.rows[v1] >> a1 & 1) != (D2.rows[v2] >> a2 & 1):
                return False
            if (D1.rows[a1] >> v1 & 1) != (D2.rows[a2] >> v2 & 1):
                return False
        return True

    def extend(i: int) -> bool:
        nonlocal used
        if i == n:
            return True
        v1 = order[i]
        for v2 in by_sig[sig1[v1]]:
            if used >> v2 & 1 or not consistent(v1, v2):
                continue
            mapping[v1] = v2
            used |= 1 << v2
            if extend(i + 1):
                return True
            del mapping[v1]
            used &= ~(1 << v2)
        return False

    if extend(0):
        return True, dict(sorted(mapping.items()))
    return False, None
