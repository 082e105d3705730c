import json

import pytest
from hypothesis import given, settings

from strategies import graphs
from supersat.constructions import complete, independent, kneser, path
from supersat.formats import from_graph6, from_json, to_dot, to_graph6, to_json
from supersat.graphs import Graph


def test_graph6_known_encodings():
    assert to_graph6(complete(4)) == "C~"
    assert to_graph6(independent(5)) == "D??"
    assert to_graph6(path(3)) == "Bg"
    assert to_graph6(kneser(5)) == "I?LRCecq?"


def test_graph6_decode_known():
    g = from_graph6("C~")
    assert (g.n, g.edge_count) == (4, 6)
    p = from_graph6("I?LRCecq?")
    assert (p.n, p.edge_count) == (10, 15)
    assert all(p.degree(v) == 3 for v in range(10))


def test_graph6_rejects_garbage():
    for bad in ("", "!!!", "C", "Bg extra"):
        with pytest.raises(ValueError):
            from_graph6(bad)


def test_graph6_long_form_header():
    g = Graph(80, [(0, 79), (3, 7)])
    enc = to_graph6(g)
    back = from_graph6(enc)
    assert back.n == 80
    assert sorted(back.edges()) == [(0, 79), (3, 7)]


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=12))
def test_graph6_round_trip(g):
    back = from_graph6(to_graph6(g))
    assert back.n == g.n
    assert sorted(back.edges()) == sorted(g.edges())


def test_json_round_trip_with_labels():
    g = kneser(5)
    labels = {0: "X", 5: "V1"}
    doc = to_json(g, labels)
    back, back_labels = from_json(doc)
    assert sorted(back.edges()) == sorted(g.edges())
    assert back_labels == labels
    parsed = json.loads(doc)
    assert parsed["schema"] == 1
    assert parsed["n"] == 10


def test_json_rejects_unknown_schema():
    with pytest.raises(ValueError):
        from_json(json.dumps({"schema": 99, "n": 1, "adjacency": [[]]}))


def test_dot_output_lists_vertices_and_edges():
    text = to_dot(path(3))
    assert text.startswith("graph G {")
    assert "0 -- 1;" in text and "1 -- 2;" in text
    assert text.rstrip().endswith("}")
