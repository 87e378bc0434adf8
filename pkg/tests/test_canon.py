import random
from itertools import combinations

import networkx as nx
import pytest

from eopack.canon import (
    are_isomorphic,
    canonical_form,
    canonical_graph,
    corpus,
    enumerate_connected_graphs,
)
from eopack.graph import GraphError, build_graph, cycle_graph, is_connected, path_graph, relabel, star_graph

from oracles import brute_certificate, labeled_graphs, to_nx

EXPECTED_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853}


def test_relabeled_cycle_same_certificate():
    c5 = cycle_graph(5)
    other = build_graph(5, [(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)])
    assert canonical_form(c5) == canonical_form(other)
    assert canonical_form(path_graph(4)) != canonical_form(star_graph(3))


@pytest.mark.parametrize("n", [4, 5])
def test_labeled_enumeration_oracle(n):
    # distinct certificates among labeled connected graphs = class count,
    # and the certificate partition matches the brute-force one
    ours, brute = set(), set()
    pairs = set()
    for edges in labeled_graphs(n):
        g = build_graph(n, edges)
        if not is_connected(g):
            continue
        a, b = canonical_form(g), brute_certificate(g)
        ours.add(a)
        brute.add(b)
        pairs.add((a, b))
    assert len(ours) == len(brute) == len(pairs) == EXPECTED_COUNTS[n]


def test_labeled_enumeration_n6():
    found = set()
    for edges in labeled_graphs(6):
        g = build_graph(6, edges)
        if is_connected(g):
            found.add(canonical_form(g))
    assert len(found) == 112
    assert found == {canonical_form(g) for g in enumerate_connected_graphs(6)}


@pytest.mark.parametrize("n, count", sorted(EXPECTED_COUNTS.items()))
def test_corpus_counts(n, count):
    graphs = list(enumerate_connected_graphs(n))
    assert len(graphs) == count
    assert all(is_connected(g) for g in graphs)
    certs = [canonical_form(g) for g in graphs]
    assert certs == sorted(certs) and len(set(certs)) == count


def test_n7_matches_networkx_atlas():
    atlas = [h for h in nx.graph_atlas_g() if h.number_of_nodes() == 7 and nx.is_connected(h)]
    mine = {canonical_form(g) for g in enumerate_connected_graphs(7)}
    theirs = {canonical_form(build_graph(7, h.edges)) for h in atlas}
    assert len(theirs) == 853 and mine == theirs


def test_corpus_pairwise_non_isomorphic_by_networkx():
    graphs = list(enumerate_connected_graphs(6))
    for a, b in combinations(graphs, 2):
        if a.m == b.m and sorted(a.degrees) == sorted(b.degrees):
            assert not nx.is_isomorphic(to_nx(a), to_nx(b))


def test_certificate_invariant_under_relabeling(corpus7):
    rng = random.Random(20240611)
    for g in corpus7:
        cert = canonical_form(g)
        for _ in range(100):
            perm = list(range(g.n))
            rng.shuffle(perm)
            assert canonical_form(relabel(g, perm)) == cert


def test_are_isomorphic_agrees_with_networkx():
    rng = random.Random(7)
    graphs = corpus(6, 6)
    for _ in range(300):
        a, b = rng.sample(graphs, 2)
        perm = list(range(6))
        rng.shuffle(perm)
        b2 = relabel(a, perm)
        assert are_isomorphic(a, b2)
        assert are_isomorphic(a, b) == nx.is_isomorphic(to_nx(a), to_nx(b))


def test_canonical_graph_is_fixed_point(small_corpus):
    for g in small_corpus:
        c = canonical_graph(g)
        assert canonical_graph(c) == c
        assert are_isomorphic(c, g)


def test_out_of_range():
    with pytest.raises(GraphError):
        list(enumerate_connected_graphs(8))
    with pytest.raises(GraphError):
        list(enumerate_connected_graphs(0))
