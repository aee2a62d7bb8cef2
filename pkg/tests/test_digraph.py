import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import digraphs
from hamlab import DegreeSummary, Digraph, DigraphError, ParseError, is_isomorphic, parse, serialize
from hamlab.digraph import read, serialize_arcs, write
from hamlab.families import complete, complete_bipartite, directed_cycle, phi_maximal
import oracles


def test_arc_complete():
    assert complete(3).arc(0, 1)


def test_arc_cycle_backwards():
    assert not directed_cycle(3).arc(1, 0)


def test_arc_phi_forbidden_pair():
    # x_1 -> x_6 is vertex 0 -> vertex 5
    assert not phi_maximal(8, 6).arc(0, 5)


@pytest.mark.parametrize("u,v", [(0, 0), (0, 3), (-1, 1)])
def test_arc_errors(u, v):
    with pytest.raises(DigraphError):
        complete(3).arc(u, v)


def test_degrees_examples():
    K33 = complete_bipartite(3, 3)
    assert K33.degrees(0) == DegreeSummary(3, 3, 6)
    assert directed_cycle(5).degrees(2) == (1, 1, 2)
    assert K33.degrees(0, restrict_to={1, 2, 3}) == (1, 1, 2)
    with pytest.raises(DigraphError):
        K33.degrees(6)


def test_non_adjacent_pairs_examples():
    assert complete(4).non_adjacent_pairs() == []
    assert complete_bipartite(2, 2).non_adjacent_pairs() == [(0, 1), (2, 3)]
    assert phi_maximal(8, 6).non_adjacent_pairs() == [(0, 5), (1, 6), (2, 7)]


def test_induced_subdigraph_examples():
    sub, relabel = complete(4).induced_subdigraph({0, 1, 2})
    assert sub == complete(3) and relabel == {0: 0, 1: 1, 2: 2}
    sub, _ = directed_cycle(4).induced_subdigraph({0, 1})
    assert set(sub.arcs()) == {(0, 1)}
    sub, relabel = complete_bipartite(3, 3).induced_subdigraph({0, 1, 3})
    assert relabel == {0: 0, 1: 1, 3: 2}
    assert set(sub.arcs()) == {(0, 2), (2, 0), (1, 2), (2, 1)}
    with pytest.raises(DigraphError):
        complete(3).induced_subdigraph([])


def test_isomorphism_examples():
    K3 = complete(3)
    ok, m = is_isomorphic(K3, K3.relabel([2, 0, 1]))
    assert ok
    C3 = directed_cycle(3)
    ok, m = is_isomorphic(C3, C3.reverse())
    assert ok and {(m[u], m[v]) for u, v in C3.arcs()} == set(C3.reverse().arcs())
    assert is_isomorphic(complete_bipartite(2, 2), directed_cycle(4)) == (False, None)
    assert is_isomorphic(complete(3), complete(4)) == (False, None)


def test_serialize_examples():
    assert serialize(complete(2)) == "DG 2\n01\n10\n"
    assert parse("DG 3\n010\n001\n100\n") == directed_cycle(3)


def test_parse_loop_error_names_position():
    with pytest.raises(ParseError, match="loop at vertex 0") as e:
        parse("DG 2\n11\n00\n")
    assert e.value.line == 2 and e.value.column == 1


@pytest.mark.parametrize(
    "text,line",
    [
        ("", 1),
        ("GRAPH 2\n01\n10\n", 1),
        ("DG x\n", 1),
        ("DG 2\n01\n", 3),
        ("DG 2\n011\n10\n", 2),
        ("DG 2\n0a\n10\n", 2),
        ("DG 65\n", 1),
        ("DGA 2\n0 5\n", 2),
        ("DGA 2\n0 1 1\n", 2),
    ],
)
def test_parse_errors(text, line):
    with pytest.raises(ParseError) as e:
        parse(text)
    assert e.value.line == line


def test_arc_list_format_with_names(tmp_path):
    D = parse("DGA 3\n# a triangle\na b\nb c\nc a\n")
    assert D == directed_cycle(3)
    assert parse(serialize_arcs(D)) == D
    write(D, tmp_path / "d.dg")
    assert read(tmp_path / "d.dg") == D


def test_order_limits():
    with pytest.raises(DigraphError):
        Digraph(0, ())
    with pytest.raises(DigraphError):
        Digraph(65, (0,) * 65)
    with pytest.raises(DigraphError):
        Digraph(2, (1, 0))
    D = Digraph(64, (0,) * 64)
    assert D.arc_count == 0
    with pytest.raises(DigraphError):
        D.to_array()


@given(digraphs(max_order=8))
def test_round_trip(D):
    assert parse(serialize(D)) == D
    assert parse(serialize_arcs(D)) == D


@given(digraphs(max_order=8))
def test_pair_count_identity(D):
    n = D.order
    adjacent = sum(1 for x in range(n) for y in range(x + 1, n) if D.adjacent(x, y))
    assert len(D.non_adjacent_pairs()) + adjacent == n * (n - 1) // 2


@given(digraphs(max_order=8))
def test_degree_sums(D):
    outs = sum(D.degrees(v).out_degree for v in range(D.order))
    ins = sum(D.degrees(v).in_degree for v in range(D.order))
    assert outs == ins == D.arc_count == len(list(D.arcs()))
    for v in range(D.order):
        s = D.degrees(v)
        assert s.total_degree == s.out_degree + s.in_degree <= 2 * (D.order - 1)


@given(digraphs(max_order=8), st.randoms(use_true_random=False))
def test_isomorphism_reflexive_symmetric(D, rnd):
    perm = list(range(D.order))
    rnd.shuffle(perm)
    E = D.relabel(perm)
    for A, B in ((D, D), (D, E), (E, D)):
        ok, m = is_isomorphic(A, B)
        assert ok
        assert {(m[u], m[v]) for u, v in A.arcs()} == set(B.arcs())


@given(digraphs(max_order=5), digraphs(max_order=5))
def test_isomorphism_matches_oracle(D1, D2):
    if D1.order != D2.order:
        assert not is_isomorphic(D1, D2)[0]
    else:
        assert is_isomorphic(D1, D2)[0] == oracles.isomorphic(D1.order, set(D1.arcs()), set(D2.arcs()))


@given(digraphs(max_order=7))
def test_induced_on_everything_is_identity(D):
    sub, relabel = D.induced_subdigraph(range(D.order))
    assert sub == D and all(k == v for k, v in relabel.items())


@given(digraphs(max_order=7))
def test_transforms(D):
    assert D.reverse().reverse() == D
    assert set(D.reverse().arcs()) == {(v, u) for u, v in D.arcs()}
    S = D.symmetrized()
    assert all(S.arc(v, u) for u, v in S.arcs())
    assert S.non_adjacent_pairs() == D.non_adjacent_pairs()


def test_numpy_integers_accepted():
    D = Digraph.from_arcs(3, [(np.int64(0), np.int64(2))])
    assert list(D.arcs()) == [(0, 2)] and type(D.rows[0]) is int
    assert list(Digraph.from_arcs(3, [(0, 1)]).relabel(np.array([2, 0, 1])).arcs()) == [(2, 0)]
