"""Theorem registry: each entry pairs a hypothesis with a conclusion check.

Every case exists twice.  The compiled kernel (selected by ``code``) does the
bulk enumeration; ``TheoremCase.evaluate`` is a plain-Python restatement built
from the public API, used to replay failures and to cross-check the kernel.
Both return status 0 (hypothesis false), 1 (conclusion holds) or 2 (fails).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import _kernels as K
from .conditions import satisfies
from .connectivity import is_k_strong, is_strong, two_path_count
from .cycles import cycle_length_profile, cycle_through_pair, cycle_vertex_sets, hamiltonian_cycle, longest_cycle
from .digraph import Digraph, bits_of, is_isomorphic
from .factor import extract_partition_witness, find_partition_witness_bruteforce, has_cycle_factor


@dataclass(frozen=True)
class Outcome:
    status: int
    detail: str = ""
    stats: tuple[int, ...] = ()


@dataclass(frozen=True)
class TheoremCase:
    id: str
    code: int
    min_n: int
    summary: str
    check: Callable[[Digraph], Outcome]
    biconditional: bool = False
    stats_labels: tuple[str, ...] = ()
    default_sampler: str = "density"
    label: str = "counterexample"

    def evaluate(self, D: Digraph) -> Outcome:
        return self.check(D)

    def hypothesis(self, D: Digraph) -> bool:
        return self.check(D).status != 0

    def conclusion_holds(self, D: Digraph) -> bool:
        return self.check(D).status == 1


def _profile(D: Digraph) -> frozenset[int]:
    return cycle_length_profile(D).present


def _low_pairs(D: Digraph, lo: int, hi: int) -> list[tuple[int, int]]:
    return [(x, y) for x, y in D.non_adjacent_pairs() if lo <= D.degree(x) + D.degree(y) <= hi]


def _ham_outcome(D: Digraph) -> Outcome:
    if hamiltonian_cycle(D) is not None:
        return Outcome(1)
    return Outcome(2, "no Hamiltonian cycle")


# -- hypothesis classes ----------------------------------------------------------------


def _m_two_strong(D: Digraph) -> bool:
    return satisfies(D, "condition_m") and is_k_strong(D, 2)


def _factor(D: Digraph) -> Outcome:
    matched = has_cycle_factor(D)
    blocked = find_partition_witness_bruteforce(D) is not None
    if matched != blocked:
        if not matched:
            extract_partition_witness(D)  # raises if the certificate cannot be built
        return Outcome(1, stats=(int(matched), int(not matched), 0, 0))
    detail = "cycle factor and partition witness both exist" if matched else "neither a cycle factor nor a partition witness"
    return Outcome(2, detail, (int(matched), int(not matched), int(matched), int(not matched)))


def _manoussakis(D: Digraph) -> Outcome:
    if D.order < 3 or not _m_two_strong(D):
        return Outcome(0)
    return _ham_outcome(D)


def _meyniel(D: Digraph) -> Outcome:
    if not (satisfies(D, "meyniel") and is_strong(D)):
        return Outcome(0)
    return _ham_outcome(D)


def _triple(D: Digraph) -> Outcome:
    if D.order < 4 or not (is_strong(D) and satisfies(D, "manoussakis_triple")):
        return Outcome(0)
    return _ham_outcome(D)


def _woodall(D: Digraph) -> Outcome:
    return _ham_outcome(D) if satisfies(D, "woodall") else Outcome(0)


def _ghouila(D: Digraph) -> Outcome:
    return _ham_outcome(D) if satisfies(D, "ghouila_houri") else Outcome(0)


def _ore(D: Digraph) -> Outcome:
    # the undirected statement, read on the underlying graph of D
    if D.order < 3 or not satisfies(D, "ore_underlying"):
        return Outcome(0)
    if hamiltonian_cycle(D.symmetrized()) is not None:
        return Outcome(1)
    return Outcome(2, "underlying graph has no Hamiltonian cycle")


def _onepair(D: Digraph) -> Outcome:
    if D.order < 3 or len(D.non_adjacent_pairs()) > 1 or not is_k_strong(D, 2):
        return Outcome(0)
    return _ham_outcome(D)


def _remark(D: Digraph) -> Outcome:
    if len(D.non_adjacent_pairs()) != 1 or not is_strong(D) or is_k_strong(D, 2):
        return Outcome(0)
    return _ham_outcome(D)


def _trichotomy(D: Digraph) -> Outcome:
    n = D.order
    if n < 3 or not (satisfies(D, "meyniel") and is_strong(D)):
        return Outcome(0)
    present = _profile(D)
    if set(range(3, n + 1)) <= present:
        return Outcome(1, stats=(1, 0, 0))
    if n % 2 == 0:
        from .families import complete_bipartite, complete_bipartite_minus_arc

        h = n // 2
        if is_isomorphic(D, complete_bipartite(h, h))[0] or is_isomorphic(D, complete_bipartite_minus_arc(h, h))[0]:
            return Outcome(1, stats=(0, 1, 0))
    from .families import find_phi_labeling

    for m in range(3, n):
        if find_phi_labeling(D, m) is not None:
            if m in present:
                return Outcome(2, f"member of Phi with m={m} but has a cycle of length {m}")
            return Outcome(1, stats=(0, 0, 1))
    missing = sorted(set(range(3, n + 1)) - present)
    return Outcome(2, f"not pancyclic (missing {missing}), not bipartite-exceptional, not in any Phi family")


def _pancyclic_range(D: Digraph, top: int) -> Outcome:
    n = D.order
    if n < 6 or not satisfies(D, "condition_m"):
        return Outcome(0)
    if not _low_pairs(D, 0, 2 * n - 4) or not is_k_strong(D, 2):
        return Outcome(0)
    missing = sorted(set(range(3, top + 1)) - _profile(D))
    return Outcome(2, f"missing cycle lengths {missing}") if missing else Outcome(1)


def _cycles_111(D: Digraph) -> Outcome:
    return _pancyclic_range(D, D.order - 1)


def _pancyclic_116(D: Digraph) -> Outcome:
    return _pancyclic_range(D, D.order)


def _problem_117(D: Digraph) -> Outcome:
    n = D.order
    if n < 3 or not satisfies(D, "condition_m"):
        return Outcome(0)
    if not _low_pairs(D, 2 * n - 3, 2 * n - 2) or not is_k_strong(D, 2):
        return Outcome(0)
    missing = sorted(set(range(3, n + 1)) - _profile(D))
    return Outcome(2, f"missing cycle lengths {missing}") if missing else Outcome(1)


def _low_pair_class(D: Digraph) -> list[tuple[int, int]] | None:
    n = D.order
    if n < 3 or not satisfies(D, "condition_m"):
        return None
    pairs = _low_pairs(D, 0, 2 * n - 2)
    if not pairs or not is_k_strong(D, 2):
        return None
    return pairs


def _equiv(D: Digraph) -> Outcome:
    pairs = _low_pair_class(D)
    if pairs is None:
        return Outcome(0)
    ham = hamiltonian_cycle(D) is not None
    both = neither = 0
    bad = []
    for u, v in pairs:
        through = cycle_through_pair(D, u, v) is not None
        if ham and through:
            both += 1
        elif not ham and not through:
            neither += 1
        else:
            bad.append((u, v))
    if bad:
        return Outcome(2, f"Hamiltonian={ham} but cycle through pair disagrees at {bad}", (both, neither))
    return Outcome(1, stats=(both, neither))


def _nearham(D: Digraph) -> Outcome:
    pairs = _low_pair_class(D)
    if pairs is None:
        return Outcome(0)
    n = D.order
    ham = hamiltonian_cycle(D) is not None
    counts = [0, 0, 0]
    bad = []
    for u, v in pairs:
        a = (c := longest_cycle(D, through=u, avoiding=v)) is not None and c.length == n - 1
        b = (c := longest_cycle(D, through=v, avoiding=u)) is not None and c.length == n - 1
        counts[0] += ham
        counts[1] += a
        counts[2] += b
        if not (ham or a or b):
            bad.append((u, v))
    if bad:
        return Outcome(2, f"non-Hamiltonian and no (n-1)-cycle through one and avoiding the other for {bad}", tuple(counts))
    return Outcome(1, stats=tuple(counts))


def _twocycle(D: Digraph) -> Outcome:
    pairs = _low_pair_class(D)
    if pairs is None or hamiltonian_cycle(D) is not None:
        return Outcome(0)
    n = D.order
    problems = []
    for u, v in pairs:
        for w in (u, v):
            if D.degree(w) > n - 1:
                problems.append(f"d({w})={D.degree(w)} > {n - 1}")
            if (D.rows[w] & D.in_rows[w]).bit_count() > 1:
                problems.append(f"vertex {w} lies on several 2-cycles")
    return Outcome(2, "; ".join(problems)) if problems else Outcome(1)


def _longcycle(D: Digraph) -> Outcome:
    if not (satisfies(D, "condition_m") and is_strong(D)):
        return Outcome(0)
    c = longest_cycle(D)
    length = c.length if c else 0
    if length == D.order:
        return Outcome(1, stats=(1, 0))
    if length == D.order - 1:
        return Outcome(1, stats=(0, 1))
    return Outcome(2, f"longest cycle has length {length}")


def _lemma_31(D: Digraph) -> Outcome:
    n = D.order
    if n < 3:
        return Outcome(0)
    instances = 0
    bad = []
    for S in cycle_vertex_sets(D):
        m = S.bit_count()
        if not 2 <= m <= n - 1:
            continue
        for x in bits_of(D.full_mask & ~S):
            if D.degrees(x, restrict_to=bits_of(S)).total_degree >= m + 1:
                instances += 1
                sub, _ = D.induced_subdigraph(bits_of(S | 1 << x))
                missing = sorted(set(range(2, m + 2)) - _profile(sub))
                if missing:
                    bad.append((bits_of(S), x, missing))
    if not instances:
        return Outcome(0)
    if bad:
        return Outcome(2, f"cycle set, external vertex, missing lengths: {bad[:3]}", (instances,))
    return Outcome(1, stats=(instances,))


def _lemma_32(D: Digraph) -> Outcome:
    n = D.order
    instances = 0
    bad = []
    for x in range(n):
        for y in range(n):
            if x == y or D.rows[x] >> y & 1:
                continue
            k = D.rows[x].bit_count() + D.in_rows[y].bit_count() - (n - 2)
            if k >= 1:
                instances += 1
                if two_path_count(D, x, y) < k:
                    bad.append((x, y))
    if not instances:
        return Outcome(0)
    if bad:
        return Outcome(2, f"too few length-two paths for ordered pairs {bad}", (instances,))
    return Outcome(1, stats=(instances,))


def _lemma_35(D: Digraph) -> Outcome:
    n = D.order
    if n < 3 or not is_k_strong(D, 2):
        return Outcome(0)
    instances = 0
    bad = []
    for u in range(n):
        for v in range(u + 1, n):
            if cycle_through_pair(D, u, v) is not None:
                continue
            instances += 1
            if D.adjacent(u, v) or two_path_count(D, u, v) or two_path_count(D, v, u) or D.degree(u) + D.degree(v) > 2 * n - 4:
                bad.append((u, v))
    if not instances:
        return Outcome(0)
    if bad:
        return Outcome(2, f"pairs without a common cycle violate the conclusion: {bad}", (instances,))
    return Outcome(1, stats=(instances,))


CASES: tuple[TheoremCase, ...] = (
    TheoremCase("manoussakis-1.12", K.T_MANOUSSAKIS, 3, "2-strong + condition (M) => Hamiltonian",
                _manoussakis, default_sampler="condition_m"),
    TheoremCase("meyniel-1.8", K.T_MEYNIEL, 2, "strong + Meyniel => Hamiltonian", _meyniel),
    TheoremCase("triple-1.1", K.T_TRIPLE, 4, "strong + triple condition => Hamiltonian", _triple),
    TheoremCase("trichotomy-1.10", K.T_TRICHOTOMY, 3, "strong + Meyniel => pancyclic, K*_{h,h}(-e), or in Phi",
                _trichotomy, stats_labels=("pancyclic", "bipartite_exception", "phi_member")),
    TheoremCase("cycles-1.11", K.T_CYCLES_111, 6, "2-strong + (M) + pair sum <= 2n-4 => cycles of lengths 3..n-1",
                _cycles_111, default_sampler="condition_m"),
    TheoremCase("pancyclic-1.16", K.T_PANCYCLIC_116, 6, "2-strong + (M) + pair sum <= 2n-4 => pancyclic",
                _pancyclic_116, default_sampler="condition_m"),
    TheoremCase("equiv-3.3", K.T_EQUIV_33, 3, "2-strong + (M), low pair {x,y}: Hamiltonian <=> cycle through x and y",
                _equiv, biconditional=True, stats_labels=("pairs_both_true", "pairs_both_false"),
                default_sampler="condition_m"),
    TheoremCase("onepair-3.4", K.T_ONEPAIR_34, 3, "2-strong + at most one non-adjacent pair => Hamiltonian",
                _onepair, default_sampler="condition_m"),
    TheoremCase("nearham-3.6", K.T_NEARHAM_36, 3, "2-strong + (M), low pair {u,v}: Hamiltonian or an (n-1)-cycle through one avoiding the other",
                _nearham, stats_labels=("hamiltonian", "through_u_avoiding_v", "through_v_avoiding_u"),
                default_sampler="condition_m"),
    TheoremCase("longcycle-1.7", K.T_LONGCYCLE_17, 2, "strong + (M) => cycle of length >= n-1",
                _longcycle, stats_labels=("hamiltonian", "n_minus_1_cycle"), default_sampler="condition_m"),
    TheoremCase("woodall-1.13", K.T_WOODALL, 2, "x->y or d+(x)+d-(y) >= n for all x, y => Hamiltonian", _woodall),
    TheoremCase("ghouila-1.14", K.T_GHOUILA, 2, "d+(x), d-(x) >= n/2 for all x => Hamiltonian", _ghouila),
    TheoremCase("ore-1.15", K.T_ORE, 3, "underlying graph with non-adjacent sums >= n => Hamiltonian", _ore),
    TheoremCase("twocycle-3.7", K.T_TWOCYCLE_37, 3, "non-Hamiltonian 2-strong + (M), low pair: degrees <= n-1, <= one 2-cycle each",
                _twocycle, default_sampler="condition_m"),
    TheoremCase("lemma-3.1", K.T_LEMMA_31, 3, "cycle C of length m, outside x with d(x,V(C)) >= m+1 => lengths 2..m+1",
                _lemma_31, stats_labels=("hypothesis_instances",)),
    TheoremCase("lemma-3.2", K.T_LEMMA_32, 2, "xy not an arc, d+(x)+d-(y) >= n-2+k => k length-two (x,y)-paths",
                _lemma_32, stats_labels=("hypothesis_instances",)),
    TheoremCase("lemma-3.5", K.T_LEMMA_35, 3, "2-strong, no cycle through u and v => non-adjacent, no 2-path, sum <= 2n-4",
                _lemma_35, stats_labels=("hypothesis_instances",)),
    TheoremCase("factor-1.4", K.T_FACTOR, 2, "cycle factor <=> no (Y, Z, R1, R2) partition",
                _factor, biconditional=True,
                stats_labels=("has_factor", "no_factor", "both_exist", "neither_exists")),
    TheoremCase("problem-1.17", K.T_PROBLEM_117, 3, "2-strong + (M) + pair sum in [2n-3, 2n-2]: pancyclic?",
                _problem_117, default_sampler="condition_m", label="open-problem candidate"),
)

REMARK_CASE = TheoremCase("remark-3.4", K.T_REMARK, 5,
                          "strong, not 2-strong, one non-adjacent pair, non-Hamiltonian (search target)", _remark,
                          label="witness")

REGISTRY: dict[str, TheoremCase] = {c.id: c for c in CASES}
THEOREM_IDS: tuple[str, ...] = tuple(REGISTRY)


def get_case(theorem_id: str) -> TheoremCase:
    try:
        return REGISTRY[theorem_id]
    except KeyError:
        raise KeyError(f"unknown theorem id {theorem_id!r}; known: {', '.join(THEOREM_IDS)}") from None
