import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from hamlab import Digraph, DigraphError, satisfies, serialize
from hamlab.connectivity import is_k_strong, is_strong, vertex_connectivity
from hamlab.cycles import cycle_length_profile
from hamlab.families import (
    EnumerationScope,
    FamilySpec,
    complement_patterns,
    complete,
    complete_bipartite,
    complete_bipartite_minus_arc,
    decode_complement,
    directed_cycle,
    enumerate_digraphs,
    find_phi_labeling,
    generate,
    is_in_phi,
    parse_family,
    phi_maximal,
    random_condition_m_digraph,
    sample_condition_m,
    sample_density,
)


def test_generate_examples():
    assert generate("complete:n=3").arc_count == 6
    K22 = generate(FamilySpec("complete_bipartite", (2, 2)))
    assert K22.arc_count == 8 and K22.non_adjacent_pairs() == [(0, 1), (2, 3)]
    C5 = generate("directed_cycle:n=5")
    assert C5.arc_count == 5 and vertex_connectivity(C5).kappa == 1
    D = generate("complete_bipartite_minus_arc:a=3,b=3")
    assert D.arc_count == 17 and not D.arc(0, 3) and D.arc(3, 0)


@pytest.mark.parametrize("text", ["phi:n=8,m=4", "phi:n=8,m=8", "complete:n=0", "cube:n=3", "phi:n=8", "complete:n=x"])
def test_invalid_families(text):
    with pytest.raises(DigraphError):
        generate(text)


def test_family_string_round_trip():
    for text in ["phi:n=8,m=6", "complete_bipartite:a=3,b=2", "complete:n=4"]:
        assert str(parse_family(text)) == text


def test_phi_maximal_8_6():
    D = phi_maximal(8, 6)
    assert D.non_adjacent_pairs() == [(0, 5), (1, 6), (2, 7)]
    # x_8 x_7 ... x_1 x_8 is vertex 7 -> 6 -> ... -> 0 -> 7
    assert all(D.arc(i + 1, i) for i in range(7)) and D.arc(0, 7)
    assert cycle_length_profile(D).missing == [6]
    assert satisfies(D, "meyniel") and is_strong(D)


def test_phi_range_exhaustive():
    # every legal (n, m) up to n = 10: (v) holds and exactly length m is missing
    for n in range(4, 11):
        for m in range(n // 2 + 1, n):
            if not n + 1 < 2 * m:
                continue
            D = phi_maximal(n, m)
            assert is_in_phi(D, n, m, list(range(n)))
            assert cycle_length_profile(D).missing == [m]


def test_is_in_phi_examples():
    D = phi_maximal(8, 6)
    assert is_in_phi(D, 8, 6, list(range(8)))
    assert not is_in_phi(complete(8), 8, 6, list(range(8)))
    assert not is_in_phi(D.with_arcs(add=[(4, 1)]), 8, 6, list(range(8)))
    assert not is_in_phi(D, 8, 6, [0] * 8)
    assert not is_in_phi(D, 8, 5, list(range(8)))


@given(st.permutations(list(range(8))))
def test_find_phi_labeling_under_relabeling(perm):
    D = phi_maximal(8, 6).relabel(perm)
    lab = find_phi_labeling(D, 6)
    assert lab is not None and is_in_phi(D, 8, 6, lab)
    assert find_phi_labeling(D, 7) is None


def test_bipartite_family_invariants():
    for a in range(1, 5):
        for b in range(1, 5):
            D = complete_bipartite(a, b)
            assert D.arc_count == 2 * a * b
            same_side = [(x, y) for x, y in itertools.combinations(range(a + b), 2) if (x < a) == (y < a)]
            assert D.non_adjacent_pairs() == same_side
            E = complete_bipartite_minus_arc(a, b)
            assert E.arc_count == 2 * a * b - 1


def test_enumeration_examples():
    assert sum(1 for _ in enumerate_digraphs(EnumerationScope(3))) == 64
    assert sum(1 for _ in enumerate_digraphs(EnumerationScope(3, prefilter=["strong"]))) == 18
    a = [serialize(D) for D in enumerate_digraphs(EnumerationScope(7, "sampled", sample_count=1000, seed=42))]
    b = [serialize(D) for D in enumerate_digraphs(EnumerationScope(7, "sampled", sample_count=1000, seed=42))]
    assert a == b and len(a) == 1000


def test_strong_count_oracle():
    n = 3
    pairs = list(itertools.permutations(range(n), 2))
    count = sum(oracles.strong(range(n), {p for i, p in enumerate(pairs) if bits >> i & 1}) for bits in range(64))
    assert count == 18


def test_complement_covers_exhaustive_at_3():
    full = {serialize(D) for D in enumerate_digraphs(EnumerationScope(3))}
    comp = [serialize(D) for D in enumerate_digraphs(EnumerationScope(3, "complement", pair_budget=3))]
    assert len(comp) == len(set(comp)) == 64 and set(comp) == full


def test_complement_pattern_order():
    pats = complement_patterns(4, 2)
    assert len(pats) == 1 + 6 + 15
    assert pats[:3] == [0, 1, 2]
    D = decode_complement(3, 0b001, 0)
    # pair (0,1) non-adjacent; (0,2) gets state 0 (0->2), (1,2) state 0 (1->2)
    assert set(D.arcs()) == {(0, 2), (1, 2)}


def test_scope_limits():
    with pytest.raises(DigraphError):
        EnumerationScope(6)
    with pytest.raises(DigraphError):
        EnumerationScope(8, "complement")
    with pytest.raises(DigraphError):
        EnumerationScope(5, "sampled", sample_count=10)
    with pytest.raises(DigraphError):
        EnumerationScope(5, prefilter=["bogus"])
    with pytest.raises(DigraphError):
        EnumerationScope(5, "teleport")
    assert EnumerationScope(6, "complement").mode == "exhaustive_complement"


def test_prefiltered_stream_matches_predicate():
    got = list(enumerate_digraphs(EnumerationScope(4, prefilter=["two_strong", "condition_m"])))
    assert got and all(is_k_strong(D, 2) and satisfies(D, "condition_m") for D in got)


def test_density_sampler_frozen():
    rows = sample_density(7, 1000, 42)
    import hashlib

    assert hashlib.sha256(rows.tobytes()).hexdigest() == "aa67f881c50ae2cea178b78585dbcba9a45556c6047df2e1798b2230278cceef"
    assert not np.any(rows & (np.int64(1) << np.arange(7)))


def test_random_condition_m_examples():
    D = random_condition_m_digraph(6, 1, 0)
    assert D.non_adjacent_pairs() == [] and evaluate_vacuous(D) and is_k_strong(D, 2)
    D = random_condition_m_digraph(8, 7, 2)
    assert serialize(D) == "DG 8\n01011101\n00101001\n01011111\n10001011\n11110001\n11111011\n11001101\n01001110\n"
    assert len(D.non_adjacent_pairs()) == 2 and satisfies(D, "condition_m") and is_k_strong(D, 2)
    assert random_condition_m_digraph(4, 3, 6) is None


def evaluate_vacuous(D):
    from hamlab.conditions import evaluate

    r = evaluate(D, "condition_m")
    return r.satisfied and r.vacuous


def test_no_order_4_digraph_with_six_nonadjacent_pairs_is_two_strong():
    # with all 6 pairs non-adjacent the digraph is empty
    assert not is_k_strong(Digraph(4, (0, 0, 0, 0)), 2)


def test_condition_m_sampler_outputs_in_class():
    rows = sample_condition_m(7, 300, 5)
    assert len(rows) == 300
    for r in rows:
        D = Digraph.from_array(r)
        assert satisfies(D, "condition_m") and is_k_strong(D, 2)
        assert 1 <= len(D.non_adjacent_pairs()) <= 3
