"""Named digraph families, Definition-1.9 membership, enumeration and seeded sampling."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from . import _kernels as K
from .conditions import satisfies
from .connectivity import is_k_strong, is_strong
from .digraph import Digraph, DigraphError

RNG_NAME = "numpy.random.PCG64"
FAMILIES = ("complete", "complete_bipartite", "complete_bipartite_minus_arc", "phi", "directed_cycle")
PREFILTERS = ("strong", "two_strong", "condition_m", "meyniel", "manoussakis_triple", "woodall", "ghouila_houri", "ore_underlying")
PREFILTER_CODES = {
    "strong": K.C_STRONG,
    "two_strong": K.C_TWO_STRONG,
    "condition_m": K.C_CONDITION_M,
    "meyniel": K.C_MEYNIEL,
    "manoussakis_triple": K.C_TRIPLE,
    "woodall": K.C_WOODALL,
    "ghouila_houri": K.C_GHOUILA,
    "ore_underlying": K.C_ORE,
}
MAX_EXHAUSTIVE = 5
MAX_COMPLEMENT = 7
SAMPLERS = ("density", "condition_m")


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: tuple[int, ...]

    def __post_init__(self):
        want = {"complete": 1, "directed_cycle": 1, "complete_bipartite": 2,
                "complete_bipartite_minus_arc": 2, "phi": 2}
        if self.family not in want:
            raise DigraphError(f"unknown family {self.family!r}")
        if len(self.params) != want[self.family]:
            raise DigraphError(f"{self.family} takes {want[self.family]} parameter(s)")
        if any(p < 1 for p in self.params):
            raise DigraphError("family sizes must be >= 1")
        if self.family == "phi":
            n, m = self.params
            if not (n + 1 < 2 * m and m <= n - 1):
                raise DigraphError(f"phi needs (n+1)/2 < m <= n-1, got n={n}, m={m}")
        if self.family == "complete_bipartite_minus_arc" and min(self.params) < 1:
            raise DigraphError("complete_bipartite_minus_arc needs two nonempty sides")

    def __str__(self) -> str:
        names = {"complete": ("n",), "directed_cycle": ("n",), "complete_bipartite": ("a", "b"),
                 "complete_bipartite_minus_arc": ("a", "b"), "phi": ("n", "m")}[self.family]
        return self.family + ":" + ",".join(f"{k}={v}" for k, v in zip(names, self.params))


def parse_family(text: str) -> FamilySpec:
    """Parse ``name:key=value,...`` (e.g. ``phi:n=8,m=6``, ``complete_bipartite:a=3,b=3``)."""
    name, _, rest = text.strip().partition(":")
    keys = {"complete": ("n",), "directed_cycle": ("n",), "complete_bipartite": ("a", "b"),
            "complete_bipartite_minus_arc": ("a", "b"), "phi": ("n", "m")}
    if name not in keys:
        raise DigraphError(f"unknown family {name!r}; expected one of {', '.join(FAMILIES)}")
    vals: dict[str, int] = {}
    for item in filter(None, rest.split(",")):
        k, _, v = item.partition("=")
        try:
            vals[k.strip()] = int(v)
        except ValueError:
            raise DigraphError(f"bad parameter {item!r}") from None
    if set(vals) != set(keys[name]):
        raise DigraphError(f"{name} needs parameters {', '.join(keys[name])}")
    return FamilySpec(name, tuple(vals[k] for k in keys[name]))


def complete(n: int) -> Digraph:
    return Digraph.from_arcs(n, ((u, v) for u in range(n) for v in range(n) if u != v))


def directed_cycle(n: int) -> Digraph:
    if n < 2:
        raise DigraphError("a directed cycle needs at least 2 vertices")
    return Digraph.from_arcs(n, ((v, (v + 1) % n) for v in range(n)))


def complete_bipartite(a: int, b: int) -> Digraph:
    """K*_{a,b}: sides {0..a-1} and {a..a+b-1}, both arcs on every cross pair."""
    arcs = []
    for u in range(a):
        for v in range(a, a + b):
            arcs += [(u, v), (v, u)]
    return Digraph.from_arcs(a + b, arcs)


def complete_bipartite_minus_arc(a: int, b: int) -> Digraph:
    """K*_{a,b} without its lexicographically first cross arc, 0 -> a."""
    return complete_bipartite(a, b).with_arcs(remove=[(0, a)])


def phi_maximal(n: int, m: int) -> Digraph:
    """Arc-maximal digraph meeting conditions (i)-(iv) of the Phi_n^m definition.

    Vertex ``i-1`` plays x_i.  Arcs: x_{i+1} -> x_i, x_1 -> x_n, and every forward
    arc x_i -> x_j (i < j) except on the pairs {x_k, x_{k+m-1}}.  Condition (v) is
    then checked rather than assumed.
    """
    FamilySpec("phi", (n, m))
    forbidden = {(k, k + m - 1) for k in range(1, n - m + 2)}
    arcs = [(i, i - 1) for i in range(1, n)]
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if (i, j) not in forbidden:
                arcs.append((i - 1, j - 1))
    D = Digraph.from_arcs(n, arcs)
    if not satisfies(D, "meyniel"):
        raise DigraphError(f"phi_maximal({n}, {m}) violates the degree-sum condition (v)")
    if not is_in_phi(D, n, m, list(range(n))):
        raise DigraphError(f"phi_maximal({n}, {m}) failed its own membership check")
    return D


def is_in_phi(D: Digraph, n: int, m: int, labeling: Sequence[int]) -> bool:
    """Conditions (i)-(v) with ``labeling[i-1]`` playing x_i."""
    if D.order != n or not (n + 1 < 2 * m and m <= n - 1):
        return False
    if sorted(labeling) != list(range(n)):
        return False
    x = [None] + list(labeling)  # 1-indexed
    for i in range(1, n):
        if not D.rows[x[i + 1]] >> x[i] & 1:
            return False
    if not D.rows[x[1]] >> x[n] & 1:
        return False
    for k in range(1, n - m + 2):
        if D.adjacent(x[k], x[k + m - 1]):
            return False
    for j in range(1, n + 1):
        for i in range(1, j - 1):
            if D.rows[x[j]] >> x[i] & 1:
                return False
    return satisfies(D, "meyniel") if n >= 2 else True


def find_phi_labeling(D: Digraph, m: int) -> list[int] | None:
    """A labeling under which D lies in Phi_n^m, or None."""
    n = D.order
    out = D.to_array()
    lab = np.zeros(n + 1, np.int64)
    if not K.find_phi_labeling(out, K.make_in_rows(out, n), n, m, lab):
        return None
    labeling = [int(v) for v in lab[1:]]
    return labeling if is_in_phi(D, n, m, labeling) else None


def generate(spec: FamilySpec | str) -> Digraph:
    if isinstance(spec, str):
        spec = parse_family(spec)
    p = spec.params
    if spec.family == "complete":
        return complete(*p)
    if spec.family == "directed_cycle":
        return directed_cycle(*p)
    if spec.family == "complete_bipartite":
        return complete_bipartite(*p)
    if spec.family == "complete_bipartite_minus_arc":
        return complete_bipartite_minus_arc(*p)
    return phi_maximal(*p)


# -- enumeration -------------------------------------------------------------------------


@dataclass(frozen=True)
class EnumerationScope:
    """Which digraphs a run looks at.

    ``exhaustive``: every labeled digraph of order n (n <= 5).
    ``exhaustive_complement``: every digraph with at most ``pair_budget``
    non-adjacent pairs (n <= 7).
    ``sampled``: ``sample_count`` seeded draws from ``sampler`` (None lets the
    harness pick the theorem's default; plain enumeration treats it as density).
    """

    n: int
    mode: str = "exhaustive"
    sample_count: int | None = None
    seed: int | None = None
    prefilter: tuple[str, ...] = ()
    pair_budget: int = 3
    sampler: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "prefilter", tuple(self.prefilter))
        if self.mode == "complement":
            object.__setattr__(self, "mode", "exhaustive_complement")
        if self.n < 2:
            raise DigraphError("enumeration needs n >= 2")
        if self.mode == "exhaustive":
            if self.n > MAX_EXHAUSTIVE:
                raise DigraphError(f"exhaustive enumeration is limited to n <= {MAX_EXHAUSTIVE}")
        elif self.mode == "exhaustive_complement":
            if self.n > MAX_COMPLEMENT:
                raise DigraphError(f"complement enumeration is limited to n <= {MAX_COMPLEMENT}")
            if self.pair_budget < 0:
                raise DigraphError("pair_budget must be >= 0")
        elif self.mode == "sampled":
            if self.sample_count is None or self.seed is None:
                raise DigraphError("sampled mode needs sample_count and seed")
            if self.sample_count < 0:
                raise DigraphError("sample_count must be >= 0")
            if self.sampler is not None and self.sampler not in SAMPLERS:
                raise DigraphError(f"unknown sampler {self.sampler!r}")
            if self.n > 16:
                raise DigraphError("sampled verification is limited to n <= 16")
        else:
            raise DigraphError(f"unknown mode {self.mode!r}")
        for f in self.prefilter:
            if f not in PREFILTER_CODES:
                raise DigraphError(f"unknown prefilter {f!r}")

    def to_dict(self) -> dict:
        d = {"n": self.n, "mode": self.mode, "prefilter": list(self.prefilter)}
        if self.mode == "exhaustive_complement":
            d["pair_budget"] = self.pair_budget
        if self.mode == "sampled":
            d.update(sample_count=self.sample_count, seed=self.seed, sampler=self.sampler or "density")
        return d

    @property
    def prefilter_codes(self) -> np.ndarray:
        return np.array([PREFILTER_CODES[f] for f in self.prefilter], np.int64)


def pair_list(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(n), 2))


def complement_patterns(n: int, pair_budget: int) -> list[int]:
    """Non-adjacent pair sets (masks over ``pair_list(n)``) by size, then lexicographically."""
    P = n * (n - 1) // 2
    out = []
    for size in range(min(pair_budget, P) + 1):
        for combo in itertools.combinations(range(P), size):
            out.append(sum(1 << i for i in combo))
    return out


def decode_complement(n: int, pattern: int, state: int) -> Digraph:
    rows = [0] * n
    for i, (u, v) in enumerate(pair_list(n)):
        if pattern >> i & 1:
            continue
        digit = state % 3
        state //= 3
        if digit in (0, 2):
            rows[u] |= 1 << v
        if digit in (1, 2):
            rows[v] |= 1 << u
    return Digraph(n, tuple(rows))


def decode_arc_index(n: int, index: int) -> Digraph:
    rows = [0] * n
    b = 0
    for u in range(n):
        for v in range(n):
            if u != v:
                if index >> b & 1:
                    rows[u] |= 1 << v
                b += 1
    return Digraph(n, tuple(rows))


def _passes(D: Digraph, prefilter: tuple[str, ...]) -> bool:
    for f in prefilter:
        if f == "strong":
            ok = is_strong(D)
        elif f == "two_strong":
            ok = is_k_strong(D, 2)
        else:
            ok = satisfies(D, f)
        if not ok:
            return False
    return True


def enumerate_digraphs(scope: EnumerationScope) -> Iterator[Digraph]:
    """Deterministic stream of digraphs for ``scope`` (prefilters applied)."""
    n = scope.n
    if scope.mode == "exhaustive":
        it = (decode_arc_index(n, i) for i in range(1 << (n * (n - 1))))
    elif scope.mode == "exhaustive_complement":
        P = n * (n - 1) // 2

        def gen():
            for pat in complement_patterns(n, scope.pair_budget):
                for s in range(3 ** (P - pat.bit_count())):
                    yield decode_complement(n, pat, s)

        it = gen()
    else:
        rows = sample_rows(scope)
        it = (Digraph.from_array(r) for r in rows)
    for D in it:
        if _passes(D, scope.prefilter):
            yield D


def _rng(seed, *extra) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(seed), *extra])))


def sample_density(n: int, count: int, seed: int) -> np.ndarray:
    """``count`` digraphs as row-mask arrays; each draw picks an arc density
    p ~ U(0.5, 1) and keeps every arc independently with probability p."""
    rng = _rng(seed, 0)
    rows = np.zeros((count, n), np.int64)
    if count == 0:
        return rows
    p = rng.uniform(0.5, 1.0, size=count)
    u = rng.random((count, n, n))
    present = u < p[:, None, None]
    idx = np.arange(n)
    present[:, idx, idx] = False
    weights = (np.int64(1) << np.arange(n, dtype=np.int64))
    rows[:] = (present * weights).sum(axis=2)
    return rows


def _condition_m_candidates(rng: np.random.Generator, n: int, batch: int, pairs: int | None, pair_budget: int) -> np.ndarray:
    P = n * (n - 1) // 2
    pu, pv = np.array(pair_list(n), np.int64).T
    if pairs is None:
        k = rng.integers(1, max(pair_budget, 1) + 1, size=batch)
    else:
        k = np.full(batch, pairs)
    ranks = np.argsort(np.argsort(rng.random((batch, P)), axis=1), axis=1)
    nonadj = ranks < k[:, None]
    q = rng.random(batch)  # per-draw probability of a 2-cycle on an adjacent pair
    both = rng.random((batch, P)) < q[:, None]
    fwd = rng.random((batch, P)) < 0.5
    a_uv = ~nonadj & (both | fwd)
    a_vu = ~nonadj & (both | ~fwd)
    rows = np.zeros((batch, n), np.int64)
    for i in range(P):
        rows[:, pu[i]] |= np.where(a_uv[:, i], np.int64(1) << pv[i], 0)
        rows[:, pv[i]] |= np.where(a_vu[:, i], np.int64(1) << pu[i], 0)
    return rows


def sample_condition_m(n: int, count: int, seed: int, pairs: int | None = None, pair_budget: int = 3,
                       max_attempts: int | None = None, batch: int = 4096) -> np.ndarray:
    """Rejection sampler for the condition-(M), 2-strong class.

    Each candidate has ``pairs`` non-adjacent pairs (uniform in 1..pair_budget
    when None) placed uniformly; every other pair gets both arcs with a
    per-draw probability q ~ U(0, 1), otherwise a single arc in a random
    direction.  Candidates failing condition (M) or 2-strongness are rejected.
    Returns at most ``count`` rows (fewer if ``max_attempts`` runs out).
    """
    if n < 4:
        raise DigraphError("condition-(M) sampling needs n >= 4")
    if pairs is not None and not 0 <= pairs <= n * (n - 1) // 2:
        raise DigraphError("pairs out of range")
    rng = _rng(seed, 1)
    budget = max_attempts if max_attempts is not None else max(1000 * count, 10_000)
    got = []
    total = 0
    tried = 0
    while total < count and tried < budget:
        b = min(batch, budget - tried)
        cand = _condition_m_candidates(rng, n, b, pairs, pair_budget)
        keep = np.zeros(b, np.bool_)
        K.filter_condition_m_two_strong(cand, keep)
        sel = cand[keep][: count - total]
        got.append(sel)
        total += len(sel)
        tried += b
    return np.concatenate(got) if got else np.zeros((0, n), np.int64)


def random_condition_m_digraph(n: int, seed: int, nonadjacent_pairs: int, max_attempts: int = 20_000) -> Digraph | None:
    """One seeded draw from :func:`sample_condition_m` with a fixed pair count."""
    rows = sample_condition_m(n, 1, seed, pairs=nonadjacent_pairs, max_attempts=max_attempts)
    return Digraph.from_array(rows[0]) if len(rows) else None


def sample_rows(scope: EnumerationScope) -> np.ndarray:
    if scope.sampler in (None, "density"):
        return sample_density(scope.n, scope.sample_count, scope.seed)
    return sample_condition_m(scope.n, scope.sample_count, scope.seed, pair_budget=scope.pair_budget)
