import io

import networkx as nx
import pytest

from eopack.graph import build_graph, complete_graph, cycle_graph, path_graph
from eopack.canon import are_isomorphic
from eopack.graph6 import HEADER, Graph6Error, iter_graph6, parse_graph6, write_graph6

from oracles import to_nx


def _nx_encoding(g):
    return nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()


def test_known_encodings():
    # K3: n=3 -> 'B', bits 111 padded to 111000 -> 56+63
    assert write_graph6(complete_graph(3)) == "Bw"
    assert write_graph6(build_graph(1, [])) == "@"
    assert write_graph6(cycle_graph(5)) == "Dhc"


def test_examples_decode():
    k3 = parse_graph6("Bw")
    assert (k3.n, k3.m) == (3, 3)
    assert are_isomorphic(parse_graph6(write_graph6(cycle_graph(5))), cycle_graph(5))
    assert parse_graph6(write_graph6(path_graph(4))) == path_graph(4)


def test_header_accepted_not_emitted():
    assert parse_graph6(HEADER + "Bw") == complete_graph(3)
    assert not write_graph6(complete_graph(3)).startswith(">>")


def test_matches_networkx_encoder(corpus7):
    for g in corpus7:
        assert write_graph6(g) == _nx_encoding(g)


def test_round_trip_on_corpus(corpus7):
    for g in corpus7:
        assert parse_graph6(write_graph6(g)) == g


@pytest.mark.parametrize("text", ["", "B", "Bww", "B!", "Bx", "~"])
def test_malformed_records(text):
    with pytest.raises(Graph6Error):
        parse_graph6(text)


def test_iter_reports_record_index():
    stream = io.StringIO("Bw\n\nDhc\nB!\n")
    it = iter_graph6(stream)
    assert next(it)[0] == 0
    assert next(it)[0] == 1
    with pytest.raises(Graph6Error, match="record 2"):
        next(it)
