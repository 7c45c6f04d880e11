import json

import pytest
from hypothesis import given

from conftest import graphs
from localsim.formats import (
    GraphFormatError,
    decomposition_from_json,
    decomposition_to_json,
    dumps_graph,
    dumps_json,
    jsonable,
    load_graph,
    loads_graph,
    save_graph,
    to_dot,
)
from localsim.graph import Graph, NetworkDecomposition, path_graph


@given(graphs(max_n=15))
def test_roundtrip_contiguous_ids(g):
    text = dumps_graph(g)
    assert loads_graph(text) == g
    assert dumps_graph(loads_graph(text)) == text


@given(graphs(max_n=15, ids=True))
def test_roundtrip_arbitrary_ids(g):
    assert loads_graph(dumps_graph(g)) == g


def test_file_roundtrip(tmp_path):
    g = Graph([3, 9, 40, 41], [(3, 9)])
    save_graph(g, tmp_path / "g.txt")
    assert load_graph(tmp_path / "g.txt") == g


def test_comment_lines_skipped():
    assert loads_graph("# header comment\n3 2\n\n0 1\n# mid\n1 2\n") == path_graph(3)


def test_isolated_vertices_from_header():
    g = loads_graph("5 1\n0 1\n")
    assert g.n == 5 and g.m == 1


@pytest.mark.parametrize(
    "text",
    [
        "",
        "3\n",
        "3 2\n0 1\n",
        "2 1\n0 x\n",
        "2 1\n0 0\n",
        "3 2\n0 1\n0 1\n",
        "2 1\n5 9\n7\n",
        "2 1\n0 1 2\n",
    ],
)
def test_malformed_files(text):
    with pytest.raises(GraphFormatError):
        loads_graph(text)


def test_dot_export():
    g = path_graph(4)
    dot = to_dot(g, {0: 1, 1: 1, 2: 2, 3: 1})
    assert dot.startswith("graph G {")
    assert dot.count("graph ") == 1
    assert "0 [label=1, cluster=0];" in dot
    assert "2 [label=2, cluster=1];" in dot
    assert "3 [label=1, cluster=2];" in dot
    assert "2 -- 3;" in dot


def test_decomposition_json_roundtrip():
    g = path_graph(5)
    nd = NetworkDecomposition.from_labels(g, {0: 1, 1: 1, 2: 2, 3: 3, 4: 3}, d=1, c=3)
    doc = json.loads(json.dumps(decomposition_to_json(nd)))
    back = decomposition_from_json(g, doc)
    assert dict(back.assignment) == dict(nd.assignment)
    assert (back.d, back.c) == (1, 3)
    assert doc["clusters"] == [[0, 1], [2], [3, 4]]


def test_jsonable_and_dumps_sorted():
    doc = {"b": frozenset({3, 1}), "a": (1, 2), 5: {"x": None}}
    assert jsonable(doc) == {"b": [1, 3], "a": [1, 2], "5": {"x": None}}
    text = dumps_json(doc)
    assert text.index('"5"') < text.index('"a"') < text.index('"b"')
