import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from splitterlab.families import cycle, path, star
from splitterlab.graph import (
    Graph,
    UNREACHABLE,
    ball,
    ball_within,
    delete_vertices,
    is_scattered,
    power_graph,
)

from conftest import random_graph


def test_rejects_self_loops_and_duplicates():
    with pytest.raises(ValueError, match="self-loop"):
        Graph.from_edges(3, [(0, 0)])
    with pytest.raises(ValueError, match="duplicate"):
        Graph.from_edges(3, [(0, 1), (1, 0)])
    with pytest.raises(ValueError, match="out of range"):
        Graph.from_edges(3, [(0, 3)])


def test_adjacency_symmetric():
    g = random_graph(random.Random(7), 9, 0.4)
    for u in range(g.n):
        for v in g.adjacency[u]:
            assert u in g.adjacency[v]


def test_ball_examples():
    g = cycle(6)
    assert ball(g, 0, 0) == {0}
    assert ball(g, 0, 1) == {5, 0, 1}
    assert ball(g, 0, 2) == {4, 5, 0, 1, 2}


def test_ball_rejects_out_of_range():
    with pytest.raises(ValueError):
        ball(cycle(6), 6, 1)


def test_ball_monotone_and_stabilizes():
    rng = random.Random(3)
    for _ in range(20):
        g = random_graph(rng, rng.randint(1, 9), 0.3)
        v = rng.randrange(g.n)
        prev = set()
        for d in range(g.n + 2):
            cur = ball(g, v, d)
            assert prev <= cur
            prev = cur
        component = {u for u in range(g.n) if g.distances_from(v)[u] >= 0}
        assert prev == component


def test_delete_vertices_star_center():
    g = star(5)
    deletion = delete_vertices(g, {0})
    assert deletion.graph.n == 5 and deletion.graph.m == 0


def test_delete_vertices_identity():
    g = cycle(6)
    deletion = delete_vertices(g, set())
    assert deletion.graph == g
    assert deletion.old_to_new == {v: v for v in range(6)}


def test_delete_vertices_cycle_to_path():
    deletion = delete_vertices(cycle(6), {0})
    expected = path(5)
    assert deletion.graph == expected


def test_delete_then_unmap_preserves_adjacency():
    rng = random.Random(11)
    for _ in range(25):
        g = random_graph(rng, rng.randint(2, 10), 0.4)
        drop = {v for v in range(g.n) if rng.random() < 0.3}
        deletion = delete_vertices(g, drop)
        for u in range(g.n):
            for v in range(u + 1, g.n):
                if u in drop or v in drop:
                    continue
                assert g.has_edge(u, v) == deletion.graph.has_edge(
                    deletion.old_to_new[u], deletion.old_to_new[v]
                )


def test_power_graph_examples():
    assert power_graph(path(3), 2) == Graph.from_edges(3, [(0, 1), (0, 2), (1, 2)])
    pg = power_graph(cycle(6), 2)
    missing = {(0, 3), (1, 4), (2, 5)}
    assert pg.m == 12
    assert all(not pg.has_edge(u, v) for u, v in missing)
    g = random_graph(random.Random(5), 8, 0.3)
    assert power_graph(g, 1) == g


def test_power_graph_monotone_in_k():
    rng = random.Random(13)
    for _ in range(10):
        g = random_graph(rng, 8, 0.25)
        prev = set()
        for k in range(1, 6):
            cur = set(power_graph(g, k).edges)
            assert prev <= cur
            prev = cur


def test_is_scattered_examples():
    g = cycle(12)
    assert is_scattered(g, {5}, 3) == (True, None)
    assert is_scattered(g, {0, 3, 6, 9}, 1) == (True, None)
    ok, pair = is_scattered(g, {0, 2}, 1)
    assert not ok and pair == (0, 2)


def test_scattered_iff_independent_in_power_graph():
    rng = random.Random(17)
    for _ in range(30):
        g = random_graph(rng, rng.randint(2, 10), 0.3)
        d = rng.randint(1, 3)
        x = {v for v in range(g.n) if rng.random() < 0.4}
        pg = power_graph(g, 2 * d)
        independent = all(not pg.has_edge(u, v) for u in x for v in x if u < v)
        assert is_scattered(g, x, d)[0] == independent


def test_scattered_iff_disjoint_balls():
    rng = random.Random(19)
    for _ in range(30):
        g = random_graph(rng, rng.randint(2, 10), 0.3)
        d = rng.randint(0, 3)
        x = sorted(v for v in range(g.n) if rng.random() < 0.4)
        balls = [ball(g, v, d) for v in x]
        disjoint = all(
            not (balls[i] & balls[j]) for i in range(len(x)) for j in range(i + 1, len(x))
        )
        assert is_scattered(g, x, d)[0] == disjoint


def test_disconnected_distance_unreachable():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    assert g.distance(0, 2) == UNREACHABLE
    assert is_scattered(g, {0, 2}, 100)[0]


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 12), st.integers(0, 4))
def test_ball_within_matches_induced_subgraph(n, d):
    g = cycle(n)
    subset = set(range(0, n, 2))
    if 0 not in subset:
        return
    deletion = delete_vertices(g, set(range(n)) - subset)
    expected = {
        deletion.new_to_old[u]
        for u in ball(deletion.graph, deletion.old_to_new[0], d)
    }
    assert ball_within(g, 0, d, subset) == expected
