import pytest

from splitterlab.families import (
    FamilySpec,
    clique,
    cycle,
    erdos_renyi,
    generate,
    grid,
    hub_vertices,
    path,
    star,
    subdivided_clique,
)


def test_clique_counts():
    g = clique(4)
    assert g.n == 4 and g.m == 6


def test_cycle_is_two_regular():
    g = cycle(6)
    assert g.n == 6 and g.m == 6
    assert all(g.degree(v) == 2 for v in range(6))


def test_subdivided_clique_layout():
    g = subdivided_clique(4, 1)
    assert g.n == 10 and g.m == 12
    # hubs first, then one subdivision vertex per pair in lexicographic order
    assert g.has_edge(0, 4) and g.has_edge(1, 4)  # vertex 4 subdivides pair (0,1)
    assert g.has_edge(2, 9) and g.has_edge(3, 9)  # vertex 9 subdivides pair (2,3)
    assert all(g.degree(v) == 2 for v in range(4, 10))
    assert subdivided_clique(3, 0) == clique(3)


def test_grid_numbering():
    g = grid(2, 3)
    assert g.n == 6
    assert g.has_edge(0, 1) and g.has_edge(0, 3) and not g.has_edge(2, 3)


def test_invalid_params_rejected():
    with pytest.raises(ValueError):
        cycle(2)
    with pytest.raises(ValueError):
        path(0)
    with pytest.raises(ValueError):
        grid(0, 3)
    with pytest.raises(ValueError):
        erdos_renyi(5, 150, 0)
    with pytest.raises(ValueError):
        FamilySpec("triangle", (3,))
    with pytest.raises(ValueError):
        FamilySpec("cycle", (3, 4))


def test_generate_deterministic():
    a = generate(FamilySpec("erdos_renyi", (12, 40, 7)))
    b = generate(FamilySpec("erdos_renyi", (12, 40, 7)))
    c = generate(FamilySpec("erdos_renyi", (12, 40, 8)))
    assert a.edges == b.edges
    assert a.edges != c.edges


def test_erdos_renyi_extremes():
    assert erdos_renyi(6, 0, 1).m == 0
    assert erdos_renyi(6, 100, 1).m == 15


def test_hub_vertices():
    assert hub_vertices(FamilySpec("subdivided_clique", (5, 2))) == (0, 1, 2, 3, 4)
    assert hub_vertices(FamilySpec("star", (4,))) == (0,)
    with pytest.raises(ValueError):
        hub_vertices(FamilySpec("cycle", (5,)))


def test_star_layout():
    g = star(5)
    assert g.n == 6 and g.degree(0) == 5
