from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from turan.canon import canonical_form, is_isomorphic
from turan.errors import GuardExceeded
from turan.hypergraph import (
    RMultigraph,
    blow_up,
    complement,
    complete_graph,
    contains,
    cycle_graph,
    disjoint_union,
    empty_graph,
    find_embedding,
    format_graph,
    induced,
    is_homomorphism,
    is_subgraph,
    make_graph,
    multiplicities,
    multiset_count,
    parse_graph,
    read_graph,
    relabel,
    single_edge,
    write_graph,
)


@st.composite
def multigraphs(draw, max_n=5, max_r=3, simple=False):
    from itertools import combinations, combinations_with_replacement

    r = draw(st.integers(1, max_r))
    n = draw(st.integers(0, max_n))
    pool = list((combinations if simple else combinations_with_replacement)(range(n), r))
    edges = draw(st.lists(st.sampled_from(pool), max_size=len(pool))) if pool else []
    return make_graph(r, n, edges)


def test_make_graph_examples():
    K3 = make_graph(2, 3, [[0, 1], [1, 2], [0, 2]])
    assert K3 == complete_graph(3) and K3.simple
    K43 = make_graph(3, 4, [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]])
    assert K43.e == 4 and K43.simple
    loop = make_graph(2, 2, [[0, 0]])
    assert not loop.simple and loop.edges == ((0, 0),)


def test_make_graph_normalizes():
    G = make_graph(2, 3, [[2, 1], [1, 2], [0, 2]])
    assert G.edges == ((0, 2), (1, 2))


@pytest.mark.parametrize("edges", [[[0, 1, 2]], [[0, 3]], [[-1, 0]]])
def test_make_graph_rejects(edges):
    with pytest.raises(ValueError):
        make_graph(2, 3, edges)


def test_direct_construction_validates():
    with pytest.raises(ValueError):
        RMultigraph(2, 3, ((1, 0),))
    with pytest.raises(ValueError):
        RMultigraph(2, 3, ((0, 1), (0, 1)))


def test_multiplicities():
    assert multiplicities((0, 0, 2)) == [(0, 2), (2, 1)]


def test_complement_examples():
    assert complement(single_edge(2)).edges == ((0, 0), (1, 1))
    assert complement(empty_graph(2)).e == 3
    assert complement(complement(complete_graph(3))) == complete_graph(3)


@settings(max_examples=60, deadline=None)
@given(multigraphs())
def test_complement_involution_and_count(G):
    assert complement(complement(G)) == G
    assert G.e + complement(G).e == comb(G.n + G.r - 1, G.r) == multiset_count(G.n, G.r)


def test_disjoint_union_examples():
    K3 = complete_graph(3)
    U = disjoint_union(K3, K3)
    assert (U.n, U.e) == (6, 6)
    assert disjoint_union(K3, empty_graph(0)) == K3
    assert disjoint_union(single_edge(2), single_edge(2)).edges == ((0, 1), (2, 3))
    with pytest.raises(ValueError):
        disjoint_union(K3, single_edge(3))


@settings(max_examples=30, deadline=None)
@given(multigraphs(max_n=3, max_r=2), multigraphs(max_n=3, max_r=2), multigraphs(max_n=2, max_r=2))
def test_disjoint_union_assoc_comm(A, B, C):
    if not (A.r == B.r == C.r):
        return
    assert is_isomorphic(disjoint_union(A, B), disjoint_union(B, A))
    left = disjoint_union(disjoint_union(A, B), C)
    assert left == disjoint_union(A, disjoint_union(B, C))


def test_blow_up_examples():
    B = blow_up(complete_graph(3), [2, 2, 2])
    assert (B.n, B.e) == (6, 12)
    assert blow_up(make_graph(2, 1, [(0, 0)]), [5]) == complete_graph(5)
    G = make_graph(3, 5, [(0, 1, 2), (1, 3, 4)])
    assert blow_up(G, [1] * 5) == G


def test_blow_up_profile_count():
    # edge {0,0,1} with parts of sizes 3 and 2 gives C(3,2)*C(2,1) sets
    G = make_graph(3, 2, [(0, 0, 1)])
    assert blow_up(G, [3, 2]).e == 6


@settings(max_examples=40, deadline=None)
@given(multigraphs(max_n=4), st.lists(st.integers(1, 3), min_size=4, max_size=4))
def test_blow_up_is_simple(G, sizes):
    assert blow_up(G, sizes[: G.n]).simple


def test_induced_and_relabel():
    assert induced(complete_graph(4, 3), [0, 1, 2]) == single_edge(3)
    assert induced(cycle_graph(5), [0, 2, 4]).edges == ((0, 2),)
    P = relabel(cycle_graph(4), [1, 2, 3, 0])
    assert is_isomorphic(P, cycle_graph(4))
    assert is_subgraph(cycle_graph(4), complete_graph(4))


def test_find_embedding_examples():
    emb = find_embedding(complete_graph(3), complete_graph(4))
    assert emb is not None and emb.injective and len(set(emb.assignment)) == 3
    assert find_embedding(complete_graph(3), cycle_graph(5)) is None
    hom = find_embedding(cycle_graph(5), complete_graph(3), injective=False)
    assert hom is not None and is_homomorphism(cycle_graph(5), complete_graph(3), hom.assignment)
    assert find_embedding(cycle_graph(5), complete_graph(2), injective=False) is None
    assert contains(complete_graph(5, 3), complete_graph(4, 3))


def test_find_embedding_multiset_edges():
    F = make_graph(2, 1, [(0, 0)])
    G = make_graph(2, 2, [(0, 1), (1, 1)])
    emb = find_embedding(F, G)
    assert emb.assignment == (1,)


def test_embedding_guard():
    with pytest.raises(GuardExceeded):
        find_embedding(empty_graph(13), complete_graph(14))


def test_text_round_trip(tmp_path):
    text = "3 4\n0 0 2\n0 1 3\n"
    G = parse_graph("# comment\n" + text + "\n")
    assert format_graph(G) == text
    write_graph(G, tmp_path / "g.hg")
    assert (tmp_path / "g.hg").read_text() == text
    assert read_graph(tmp_path / "g.hg") == G


@pytest.mark.parametrize("text", ["", "2\n0 1\n", "2 3\n0 x\n", "2 3\n0 1 2\n", "2 2\n0 2\n"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        parse_graph(text)


def test_canonical_form_invariance(rng):
    from conftest import random_graph

    for _ in range(20):
        G = random_graph(rng, 7, 3, multi=True)
        perm = [int(v) for v in rng.permutation(7)]
        assert canonical_form(G) == canonical_form(relabel(G, perm))
    assert not is_isomorphic(cycle_graph(6), disjoint_union(complete_graph(3), complete_graph(3)))


def test_canonical_guard():
    with pytest.raises(GuardExceeded):
        canonical_form(empty_graph(17))
