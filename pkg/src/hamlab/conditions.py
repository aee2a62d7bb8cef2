"""Degree conditions with reproducible violation witnesses.

Condition ids are the stable strings in ``CONDITION_IDS``; ``pair_sum_threshold``
takes its threshold either as ``t=`` or in the id string, ``pair_sum_threshold:15``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .digraph import Digraph, DigraphError

CONDITION_IDS = (
    "condition_m",
    "meyniel",
    "manoussakis_triple",
    "woodall",
    "ghouila_houri",
    "ore_underlying",
    "pair_sum_threshold",
)


@dataclass(frozen=True)
class Violation:
    """A failing inequality ``lhs >= rhs`` together with the vertices it involves.

    ``terms`` names the summands in order, e.g. ``("d", 0), ("d", 2)`` for
    d(0)+d(2); :func:`replay` recomputes ``lhs`` from them.
    """

    vertices: tuple[int, ...]
    terms: tuple[tuple[str, int], ...]
    lhs: int
    rhs: int

    def describe(self) -> str:
        expr = " + ".join(f"{kind}({v})" for kind, v in self.terms)
        return f"{expr} = {self.lhs} < {self.rhs}"

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "expression": " + ".join(f"{kind}({v})" for kind, v in self.terms),
            "lhs": self.lhs,
            "rhs": self.rhs,
        }


@dataclass(frozen=True)
class ConditionResult:
    condition: str
    satisfied: bool
    vacuous: bool = False
    witness: Violation | None = None
    value: int | None = None  # pair_sum_threshold: the minimum pair sum

    def __post_init__(self):
        if (self.witness is None) != self.satisfied:
            raise ValueError("a witness must be present exactly when the condition fails")


def _term(D: Digraph, kind: str, v: int) -> int:
    if kind == "d":
        return D.degree(v)
    if kind == "d+":
        return D.rows[v].bit_count()
    if kind == "d-":
        return D.in_rows[v].bit_count()
    if kind == "g":  # degree in the underlying simple graph
        return (D.rows[v] | D.in_rows[v]).bit_count()
    raise ValueError(f"unknown degree term {kind!r}")


def replay(D: Digraph, w: Violation) -> int:
    """Recompute the left-hand side of a violation against ``D``."""
    return sum(_term(D, kind, v) for kind, v in w.terms)


def _violation(D: Digraph, vertices, terms, rhs) -> Violation:
    terms = tuple(terms)
    return Violation(tuple(vertices), terms, sum(_term(D, k, v) for k, v in terms), rhs)


def parse_condition(cid: str) -> tuple[str, int | None]:
    name, _, arg = cid.partition(":")
    if name not in CONDITION_IDS:
        raise DigraphError(f"unknown condition {cid!r}")
    if name == "pair_sum_threshold":
        if not arg:
            return name, None
        try:
            return name, int(arg.removeprefix("t="))
        except ValueError:
            raise DigraphError(f"bad threshold in {cid!r}") from None
    if arg:
        raise DigraphError(f"condition {name!r} takes no parameter")
    return name, None


def min_nonadjacent_pair_sum(D: Digraph) -> tuple[int, tuple[int, int]] | None:
    """Smallest d(x)+d(y) over non-adjacent pairs with the lexicographically first
    pair achieving it, or None when every pair is adjacent."""
    best = None
    for x, y in D.non_adjacent_pairs():
        s = D.degree(x) + D.degree(y)
        if best is None or s < best[0]:
            best = (s, (x, y))
    return best


def evaluate(D: Digraph, condition: str, t: int | None = None) -> ConditionResult:
    n = D.order
    if n < 2:
        raise DigraphError("conditions are evaluated on digraphs of order >= 2")
    name, arg = parse_condition(condition)
    if arg is not None:
        t = arg
    fn = _EVALUATORS[name]
    if name == "pair_sum_threshold":
        if t is None:
            raise DigraphError("pair_sum_threshold needs a threshold t")
        return fn(D, t)
    return fn(D)


def _condition_m(D: Digraph) -> ConditionResult:
    n = D.order
    pairs = D.non_adjacent_pairs()
    if len(pairs) < 2:
        return ConditionResult("condition_m", True, vacuous=True)
    for p, q in combinations(pairs, 2):
        lhs = D.degree(p[0]) + D.degree(p[1]) + D.degree(q[0]) + D.degree(q[1])
        if lhs < 4 * n - 3:
            w = _violation(D, (*p, *q), [("d", p[0]), ("d", p[1]), ("d", q[0]), ("d", q[1])], 4 * n - 3)
            return ConditionResult("condition_m", False, witness=w)
    return ConditionResult("condition_m", True)


def _meyniel(D: Digraph) -> ConditionResult:
    n = D.order
    pairs = D.non_adjacent_pairs()
    if not pairs:
        return ConditionResult("meyniel", True, vacuous=True)
    for x, y in pairs:
        if D.degree(x) + D.degree(y) < 2 * n - 1:
            return ConditionResult("meyniel", False, witness=_violation(D, (x, y), [("d", x), ("d", y)], 2 * n - 1))
    return ConditionResult("meyniel", True)


def _manoussakis_triple(D: Digraph) -> ConditionResult:
    # z ranges over every vertex other than x (z = y included)
    n = D.order
    pairs = D.non_adjacent_pairs()
    if not pairs:
        return ConditionResult("manoussakis_triple", True, vacuous=True)
    ordered = sorted({(x, y) for x, y in pairs} | {(y, x) for x, y in pairs})
    for x, y in ordered:
        for z in range(n):
            if z == x:
                continue
            if not D.rows[x] >> z & 1:
                w = _violation(D, (x, y, z), [("d", x), ("d", y), ("d+", x), ("d-", z)], 3 * n - 2)
                if w.lhs < w.rhs:
                    return ConditionResult("manoussakis_triple", False, witness=w)
            if not D.rows[z] >> x & 1:
                w = _violation(D, (x, y, z), [("d", x), ("d", y), ("d-", x), ("d+", z)], 3 * n - 2)
                if w.lhs < w.rhs:
                    return ConditionResult("manoussakis_triple", False, witness=w)
    return ConditionResult("manoussakis_triple", True)


def _woodall(D: Digraph) -> ConditionResult:
    n = D.order
    for x in range(n):
        for y in range(n):
            if x != y and not D.rows[x] >> y & 1:
                w = _violation(D, (x, y), [("d+", x), ("d-", y)], n)
                if w.lhs < n:
                    return ConditionResult("woodall", False, witness=w)
    return ConditionResult("woodall", True)


def _ghouila_houri(D: Digraph) -> ConditionResult:
    # d+(x) >= n/2 is tested as 2*d+(x) >= n; the witness reports the doubled form
    n = D.order
    for x in range(n):
        for kind in ("d+", "d-"):
            w = _violation(D, (x,), [(kind, x), (kind, x)], n)
            if w.lhs < n:
                return ConditionResult("ghouila_houri", False, witness=w)
    return ConditionResult("ghouila_houri", True)


def _ore_underlying(D: Digraph) -> ConditionResult:
    n = D.order
    pairs = D.non_adjacent_pairs()
    if not pairs:
        return ConditionResult("ore_underlying", True, vacuous=True)
    for x, y in pairs:
        w = _violation(D, (x, y), [("g", x), ("g", y)], n)
        if w.lhs < n:
            return ConditionResult("ore_underlying", False, witness=w)
    return ConditionResult("ore_underlying", True)


def _pair_sum_threshold(D: Digraph, t: int) -> ConditionResult:
    best = min_nonadjacent_pair_sum(D)
    if best is None:
        return ConditionResult("pair_sum_threshold", True, vacuous=True)
    value, (x, y) = best
    if value >= t:
        return ConditionResult("pair_sum_threshold", True, value=value)
    w = _violation(D, (x, y), [("d", x), ("d", y)], t)
    return ConditionResult("pair_sum_threshold", False, witness=w, value=value)


_EVALUATORS = {
    "condition_m": _condition_m,
    "meyniel": _meyniel,
    "manoussakis_triple": _manoussakis_triple,
    "woodall": _woodall,
    "ghouila_houri": _ghouila_houri,
    "ore_underlying": _ore_underlying,
    "pair_sum_threshold": _pair_sum_threshold,
}


def satisfies(D: Digraph, condition: str, t: int | None = None) -> bool:
    return evaluate(D, condition, t).satisfied


def pairs_with_sum_at_most(D: Digraph, bound: int, lower: int | None = None) -> list[tuple[int, int]]:
    """Non-adjacent pairs with ``lower <= d(x)+d(y) <= bound``."""
    out = []
    for x, y in D.non_adjacent_pairs():
        s = D.degree(x) + D.degree(y)
        if s <= bound and (lower is None or s >= lower):
            out.append((x, y))
    return out
