"""Randomized properties over small graphs."""

from hypothesis import given, settings, strategies as st

from eopack.canon import are_isomorphic, canonical_form
from eopack.conditions import predict_rho_window
from eopack.graph import (
    build_graph,
    components,
    diameter,
    disjoint_union,
    induced_subgraph,
    is_connected,
    relabel,
)
from eopack.graph6 import parse_graph6, write_graph6
from eopack.packing import (
    conflict_graph,
    eop_number,
    eop_number_exact,
    injective_coloring,
    is_eop_set,
    star_decomposition,
)

import oracles


@st.composite
def graphs(draw, max_n=8, connected=False):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for v in range(n) for u in range(v)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    if connected:
        # a random spanning tree keeps the draw connected
        tree = [(draw(st.integers(0, v - 1)), v) for v in range(1, n)]
        chosen = list(set(chosen) | set(tree))
    return build_graph(n, chosen)


@st.composite
def relabeled(draw, max_n=8):
    g = draw(graphs(max_n))
    perm = draw(st.permutations(list(range(g.n))))
    return g, relabel(g, perm)


@given(relabeled())
@settings(max_examples=200, deadline=None)
def test_relabeling_invariance(pair):
    g, h = pair
    assert canonical_form(g) == canonical_form(h)
    assert are_isomorphic(g, h)
    assert eop_number(g) == eop_number(h)


@given(graphs(max_n=12))
@settings(max_examples=200, deadline=None)
def test_graph6_round_trip(g):
    text = write_graph6(g)
    assert parse_graph6(text) == g
    assert write_graph6(parse_graph6(text)) == text


@given(graphs(6), graphs(6))
@settings(max_examples=100, deadline=None)
def test_union_additive(a, b):
    assert eop_number(disjoint_union(a, b)) == eop_number(a) + eop_number(b)


@given(graphs(7))
@settings(max_examples=100, deadline=None)
def test_component_sum(g):
    total = sum(eop_number(induced_subgraph(g, vs)[0]) for vs in components(g))
    assert eop_number(g) == total


@given(graphs(6))
@settings(max_examples=60, deadline=None)
def test_exact_matches_brute_force(g):
    if g.m <= 10:
        assert eop_number(g) == oracles.rho(g)


@given(graphs(8))
@settings(max_examples=100, deadline=None)
def test_witness_is_valid_star_forest(g):
    size, d = eop_number_exact(g)
    assert len(d) == size and is_eop_set(g, d.members)
    if size:
        assert sum(star_decomposition(g, d.members).shape) == size


@given(graphs(8))
@settings(max_examples=100, deadline=None)
def test_conflict_graph_symmetric(g):
    adj = conflict_graph(g).adj
    for i, row in enumerate(adj):
        assert not row >> i & 1
        for j in range(len(adj)):
            assert (row >> j & 1) == (adj[j] >> i & 1)


@given(graphs(7, connected=True))
@settings(max_examples=100, deadline=None)
def test_bounds(g):
    rho = eop_number(g)
    if g.m:
        assert rho >= -(-diameter(g) // 2)
        assert rho <= g.m // g.min_degree
        k, colors = injective_coloring(g)
        assert k * rho >= g.m
        for c in range(k):
            assert is_eop_set(g, [i for i, x in enumerate(colors) if x == c])


@given(graphs(8, connected=True), st.integers(2, 4))
@settings(max_examples=80, deadline=None)
def test_window_characterization(g, t):
    if g.m and is_connected(g):
        assert predict_rho_window(g, t) == (2 <= eop_number(g) <= t)
