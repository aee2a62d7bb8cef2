import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import dense_digraphs, digraphs, random_corpus
from hamlab import Digraph, DigraphError
from hamlab.cycles import (
    CycleCertificate,
    cycle_length_profile,
    cycle_through_pair,
    cycle_vertex_sets,
    hamiltonian_cycle,
    is_hamiltonian,
    longest_cycle,
    verify_certificate,
)
from hamlab.families import complete, complete_bipartite, directed_cycle, phi_maximal

PATH3 = Digraph.from_arcs(3, [(0, 1), (1, 2)])
BOWTIE = Digraph.from_arcs(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])


@pytest.mark.parametrize("t", [16, 0])
def test_hamiltonian_examples(t):
    assert hamiltonian_cycle(complete(3), dp_threshold=t).vertices == (0, 1, 2)
    assert hamiltonian_cycle(PATH3, dp_threshold=t) is None
    c = hamiltonian_cycle(phi_maximal(8, 6), dp_threshold=t)
    assert c.length == 8 and verify_certificate(phi_maximal(8, 6), c)


def test_hamiltonian_order_checks():
    with pytest.raises(DigraphError):
        hamiltonian_cycle(Digraph(1, (0,)))
    with pytest.raises(DigraphError):
        hamiltonian_cycle(complete(3), dp_threshold=99)


@pytest.mark.parametrize("t", [16, 0])
def test_pair_examples(t):
    c = cycle_through_pair(directed_cycle(4), 0, 2, dp_threshold=t)
    assert c.vertices == (0, 1, 2, 3)
    assert cycle_through_pair(complete(4), 1, 3, dp_threshold=t).vertices == (1, 3)
    assert cycle_through_pair(BOWTIE, 1, 3, dp_threshold=t) is None
    with pytest.raises(DigraphError):
        cycle_through_pair(complete(3), 1, 1)


@pytest.mark.parametrize("t", [16, 0])
def test_longest_examples(t):
    assert longest_cycle(directed_cycle(5), dp_threshold=t).length == 5
    assert longest_cycle(directed_cycle(5), avoiding=3, dp_threshold=t) is None
    assert longest_cycle(complete(4), through=0, avoiding=1, dp_threshold=t).vertices == (0, 2, 3)
    with pytest.raises(DigraphError):
        longest_cycle(complete(4), through=2, avoiding=2)


@pytest.mark.parametrize("t", [16, 0])
def test_profile_examples(t):
    assert cycle_length_profile(complete(4), dp_threshold=t).present == {2, 3, 4}
    assert cycle_length_profile(complete_bipartite(3, 3), dp_threshold=t).present == {2, 4, 6}
    prof = cycle_length_profile(phi_maximal(8, 6), dp_threshold=t)
    assert prof.missing == [6] and not prof.pancyclic
    assert cycle_length_profile(complete(5)).pancyclic


def test_verify_certificate_examples():
    C3 = directed_cycle(3)
    assert verify_certificate(C3, CycleCertificate((0, 1, 2)))
    assert not verify_certificate(C3, CycleCertificate((0, 2, 1)))
    assert not verify_certificate(complete(4), (0, 1, 1, 2))
    assert not verify_certificate(complete(4), (0,))
    assert not verify_certificate(complete(4), (0, 7))
    assert str(CycleCertificate((3, 1))) == "3 1"


def _oracle_checks(D, t):
    n, arcs = oracles.arcset(D)
    cycles = oracles.simple_cycles(n, arcs)
    lengths = {len(c) for c in cycles}
    if n >= 2:
        h = hamiltonian_cycle(D, dp_threshold=t)
        assert (h is not None) == (n in lengths)
        assert h is None or verify_certificate(D, h)
    prof = cycle_length_profile(D, dp_threshold=t)
    assert prof.present == lengths
    for length, c in prof.witnesses.items():
        assert c.length == length and verify_certificate(D, c)
        assert c.vertices == min(cy for cy in cycles if len(cy) == length)
    lc = longest_cycle(D, dp_threshold=t)
    assert (lc.length if lc else 0) == max(lengths, default=0)
    for x in range(n):
        for y in range(x + 1, n):
            c = cycle_through_pair(D, x, y, dp_threshold=t)
            through = oracles.pair_cycle_lengths(n, arcs, x, y)
            assert (c is not None) == bool(through)
            if c:
                assert c.length == through[0] and {x, y} <= set(c.vertices) and verify_certificate(D, c)


def test_solvers_match_cycle_enumeration():
    for D in random_corpus(500, [2, 3, 4, 5, 6], seed=99):
        _oracle_checks(D, 16)
        _oracle_checks(D, 0)


@given(dense_digraphs(min_order=2, max_order=6), st.data())
def test_constrained_longest_matches_oracle(D, data):
    n, arcs = oracles.arcset(D)
    u = data.draw(st.integers(0, n - 1))
    v = data.draw(st.integers(0, n - 1).filter(lambda x: x != u))
    for t in (16, 0):
        c = longest_cycle(D, through=u, avoiding=v, dp_threshold=t)
        assert (c.length if c else 0) == oracles.longest(n, arcs, through=u, avoiding=v)
        if c:
            assert u in c.vertices and v not in c.vertices and verify_certificate(D, c)


@given(digraphs(min_order=2, max_order=7))
def test_engines_agree(D):
    assert hamiltonian_cycle(D) == hamiltonian_cycle(D, dp_threshold=0)
    assert cycle_length_profile(D) == cycle_length_profile(D, dp_threshold=0)
    assert is_hamiltonian(D) == (D.order in cycle_length_profile(D).present)


def test_cycle_vertex_sets():
    sets = cycle_vertex_sets(BOWTIE)
    assert sorted(sets) == sorted([0b00111, 0b11001])


def test_backtracking_beyond_threshold():
    D = directed_cycle(20).with_arcs(add=[(5, 0), (12, 3)])
    c = hamiltonian_cycle(D)
    assert c.length == 20 and verify_certificate(D, c)
    assert cycle_through_pair(D, 1, 4).vertices == (0, 1, 2, 3, 4, 5)
    assert cycle_length_profile(D).present == {6, 10, 20}
