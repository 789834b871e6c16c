import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from splitterlab import edgelist
from splitterlab.families import cycle, grid, subdivided_clique
from splitterlab.graph import Graph

from conftest import random_graph


def test_round_trip_fixture_corpus(tmp_path):
    rng = random.Random(99)
    graphs = [cycle(7), grid(3, 4), subdivided_clique(4, 2)]
    graphs += [random_graph(rng, rng.randint(1, 15), 0.3) for _ in range(20)]
    for i, g in enumerate(graphs):
        p = tmp_path / f"g{i}.edges"
        edgelist.dump(g, p, comment="fixture")
        assert edgelist.load(p) == g


def test_dumps_sorted_lexicographically():
    text = edgelist.dumps(cycle(4))
    lines = [l for l in text.splitlines() if not l.startswith("#")]
    assert lines[0] == "4 4"
    assert lines[1:] == ["0 1", "0 3", "1 2", "2 3"]


def test_comments_and_whitespace_tolerated():
    g = edgelist.loads("# a comment\n\n  3 2  \n0 1\n# middle\n1 2\n")
    assert g.n == 3 and g.m == 2


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("2 1\n0 0\n", "self-loop"),
        ("2 2\n0 1\n0 1\n", "duplicate"),
        ("2 1\n1 0\n", "violates"),
        ("2 1\n0 5\n", "violates"),
        ("2 1\n", "promises"),
        ("0 1\nx y\n", "integers"),
        ("", "header"),
        ("3\n", "header"),
    ],
)
def test_reader_rejections(text, fragment):
    with pytest.raises(edgelist.EdgeListError, match=fragment):
        edgelist.loads(text)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_round_trip_property(data):
    n = data.draw(st.integers(0, 12))
    all_pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = data.draw(st.lists(st.sampled_from(all_pairs), unique=True)) if all_pairs else []
    g = Graph.from_edges(n, edges)
    assert edgelist.loads(edgelist.dumps(g)) == g


def test_error_carries_line_number():
    try:
        edgelist.loads("# c\n3 1\n0 0\n")
    except edgelist.EdgeListError as exc:
        assert exc.line_no == 3
    else:
        raise AssertionError("expected rejection")
