import random

from hypothesis import given, settings, strategies as st

from graphkh.gf2 import corank, in_row_space, principal_submatrix
from graphkh.graph import adjacency_matrix
from graphkh.harness import random_graph
from graphkh.states import generator_is_zero, members, quotient_space, reduce, relations

from strategies import labeled_graphs


def test_relations_examples(edge_graph, unknot_plus):
    from graphkh.graph import LabeledGraph

    assert relations(edge_graph, 0b00).to_lists() == [[1, 0], [0, 1]]
    assert relations(edge_graph, 0b01).to_lists() == [[0, 0], [1, 1]]
    assert relations(LabeledGraph.from_edges([(1, 1)]), 0b1).to_lists() == [[1]]


def test_quotient_space_examples(edge_graph):
    assert quotient_space(edge_graph, 0b00).dim == 0
    sp = quotient_space(edge_graph, 0b01)
    assert sp.dim == 1 and sp.basis_cols == (0,)
    assert quotient_space(edge_graph, 0b11).dim == 0


def test_reduce_examples(edge_graph):
    sp = quotient_space(edge_graph, 0b01)
    assert reduce(sp, [1, 1]) == [0]   # x1 + x2 is a relation
    assert reduce(sp, [0, 1]) == [1]   # x2 = x1
    assert reduce(sp, [1, 0]) == [1]


def test_generator_is_zero_examples(edge_graph):
    assert generator_is_zero(quotient_space(edge_graph, 0b00), 0)
    assert not generator_is_zero(quotient_space(edge_graph, 0b01), 1)
    assert generator_is_zero(quotient_space(edge_graph, 0b11), 0)


@given(labeled_graphs(max_n=6))
@settings(max_examples=80)
def test_dimension_is_corank_and_basis_inside_state(g):
    a = adjacency_matrix(g)
    for s in range(1 << g.n):
        sp = quotient_space(g, s)
        assert sp.dim == corank(principal_submatrix(a, members(s)))
        assert set(sp.basis_cols) <= set(members(s))
        for k, b in enumerate(sp.basis_cols):
            assert sp.coords(1 << b) == 1 << k


@given(labeled_graphs(max_n=6), st.data())
@settings(max_examples=80)
def test_reduce_is_linear_with_relation_kernel(g, data):
    s = data.draw(st.integers(0, (1 << g.n) - 1))
    sp = quotient_space(g, s)
    u = data.draw(st.integers(0, (1 << g.n) - 1))
    v = data.draw(st.integers(0, (1 << g.n) - 1))
    assert sp.coords(u ^ v) == sp.coords(u) ^ sp.coords(v)
    for r in relations(g, s).rows:
        assert sp.coords(r) == 0
        assert sp.coords(u ^ r) == sp.coords(u)


def test_generator_vanishing_matches_rank_criterion():
    """For v_i outside s, x_i = 0 in V(s) iff the border row of A(s + i) lies in the row space of A(s)."""
    rng = random.Random(5)
    for _ in range(150):
        g = random_graph(rng.randint(1, 7), rng)
        a = adjacency_matrix(g)
        for s in range(1 << g.n):
            inside = members(s)
            sub = principal_submatrix(a, inside)
            sp = quotient_space(g, s)
            for i in range(g.n):
                if (s >> i) & 1:
                    continue
                border = [a[i, j] for j in inside]
                assert generator_is_zero(sp, i) == in_row_space(sub, border)
