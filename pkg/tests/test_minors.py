import json
import random

import pytest

from splitterlab.families import clique, cycle, grid
from splitterlab.graph import Graph
from splitterlab.minors import (
    MinorModel,
    TopoMinorModel,
    as_minor_model,
    compose_models,
    composed_depth,
    model_from_json,
    model_to_json,
    normalize_to_tree_model,
    verify_minor_model,
    verify_topo_model,
)

from conftest import grow_random_model, random_graph


def arcs_model():
    return MinorModel(
        host=cycle(9),
        pattern=clique(3),
        depth=1,
        branch_sets=(frozenset({0, 1, 2}), frozenset({3, 4, 5}), frozenset({6, 7, 8})),
        centers=(1, 4, 7),
    )


def test_verify_arcs_model():
    assert verify_minor_model(arcs_model()).ok


def test_verify_reports_disjointness_first():
    m = MinorModel(
        host=cycle(9),
        pattern=clique(3),
        depth=1,
        branch_sets=(frozenset({0, 1}), frozenset({1, 2}), frozenset({4, 5})),
        centers=(0, 1, 4),
    )
    v = verify_minor_model(m)
    assert not v.ok and v.clause == "branch-sets-disjoint" and "1" in v.detail


def test_verify_identity_model():
    g = random_graph(random.Random(1), 7, 0.4)
    assert verify_minor_model(MinorModel.identity(g)).ok


def test_verify_radius_violation():
    m = MinorModel(
        host=cycle(9),
        pattern=clique(2),
        depth=1,
        branch_sets=(frozenset({0, 1, 2, 3}), frozenset({5})),
        centers=(0, 5),
    )
    v = verify_minor_model(m)
    assert not v.ok and v.clause == "branch-set-radius"


def test_verify_edge_cover_violation():
    m = MinorModel(
        host=cycle(9),
        pattern=clique(2),
        depth=0,
        branch_sets=(frozenset({0}), frozenset({5})),
        centers=(0, 5),
    )
    v = verify_minor_model(m)
    assert not v.ok and v.clause == "edge-covered"


def test_dangling_ids_rejected():
    with pytest.raises(ValueError):
        MinorModel(
            host=cycle(9),
            pattern=clique(2),
            depth=0,
            branch_sets=(frozenset({0}), frozenset({77})),
            centers=(0, 77),
        )
    with pytest.raises(ValueError):
        MinorModel(
            host=cycle(9),
            pattern=clique(2),
            depth=0,
            branch_sets=(frozenset({0}), frozenset({5})),
            centers=(0, 4),  # center outside its branch set
        )


def test_verify_topo_clauses():
    host = cycle(6)
    good = TopoMinorModel(
        host=host,
        pattern=clique(2),
        depth=1,
        branch_vertices=(0, 3),
        edge_paths={(0, 1): (0, 1, 2, 3)},
    )
    assert verify_topo_model(good).ok

    too_long = TopoMinorModel(
        host=host,
        pattern=clique(2),
        depth=0,
        branch_vertices=(0, 3),
        edge_paths={(0, 1): (0, 1, 2, 3)},
    )
    assert verify_topo_model(too_long).clause == "path-length"

    not_walk = TopoMinorModel(
        host=host,
        pattern=clique(2),
        depth=1,
        branch_vertices=(0, 3),
        edge_paths={(0, 1): (0, 2, 3)},
    )
    assert verify_topo_model(not_walk).clause == "path-walk"

    shared = TopoMinorModel(
        host=cycle(8),
        pattern=Graph.from_edges(3, [(0, 1), (0, 2)]),
        depth=1,
        branch_vertices=(0, 2, 6),
        edge_paths={(0, 1): (0, 1, 2), (0, 2): (0, 1, 2, 3)},
    )
    v = verify_topo_model(shared)
    assert not v.ok  # path for (0,2) reuses vertex 1 / endpoint mismatch caught first
    assert v.clause in ("paths-disjoint", "path-endpoints")


def test_topo_implies_minor_via_conversion():
    host = cycle(9)
    topo = TopoMinorModel(
        host=host,
        pattern=clique(3),
        depth=1,
        branch_vertices=(0, 3, 6),
        edge_paths={(0, 1): (0, 1, 2, 3), (1, 2): (3, 4, 5, 6), (0, 2): (0, 8, 7, 6)},
    )
    assert verify_topo_model(topo).ok
    minor = as_minor_model(topo)
    assert minor.depth == 1
    assert verify_minor_model(minor).ok


def test_normalize_singletons_unchanged():
    g = random_graph(random.Random(2), 6, 0.6)
    m = MinorModel.identity(g)
    nm = normalize_to_tree_model(m)
    assert nm.branch_sets == m.branch_sets


def test_normalize_arcs_unchanged_up_to_center():
    nm = normalize_to_tree_model(arcs_model())
    assert verify_minor_model(nm).ok
    assert nm.branch_sets == arcs_model().branch_sets


def _induced_edge_count(host, vs):
    return sum(1 for u in vs for v in vs if u < v and host.has_edge(u, v))


def test_normalize_breaks_four_cycle_branch_set():
    # grid(3,3): vertices 0,1,3,4 form a 4-cycle (radius 2); force it into
    # one branch set and check normalization extracts induced trees
    host = grid(3, 3)
    m = MinorModel(
        host=host,
        pattern=clique(3),
        depth=2,
        branch_sets=(frozenset({0, 1, 3, 4}), frozenset({2, 5}), frozenset({7, 8})),
        centers=(0, 2, 7),
    )
    assert verify_minor_model(m).ok
    nm = normalize_to_tree_model(m)
    assert verify_minor_model(nm).ok
    for u in range(3):
        vs = nm.branch_sets[u]
        assert vs <= m.branch_sets[u]
        assert _induced_edge_count(host, vs) == len(vs) - 1  # induced tree


def test_normalize_shrinks_never_grows():
    rng = random.Random(3)
    for _ in range(20):
        model = _random_model(rng, 10, 2)
        if model is None:
            continue
        nm = normalize_to_tree_model(model)
        assert verify_minor_model(nm).ok
        for u in range(model.pattern.n):
            assert nm.branch_sets[u] <= model.branch_sets[u]
            delta = max(
                model.pattern.degree(x) for x in range(model.pattern.n)
            )
            assert len(nm.branch_sets[u]) <= 1 + delta * model.depth


def test_normalize_errors_when_forced_terminals_induce_a_cycle():
    # K_4 model at d=1 whose first branch set {0,4,5} induces a triangle
    # and every vertex of it is the sole contact to a different neighbor
    # set, so no shrink-only induced-tree normalization can exist
    from splitterlab.minors import NormalizationError

    host = Graph.from_edges(
        11,
        [(0, 3), (0, 4), (0, 5), (0, 6), (0, 9), (1, 3), (1, 5), (1, 7), (1, 8),
         (1, 9), (2, 4), (2, 7), (2, 8), (2, 9), (3, 6), (3, 7), (3, 8), (3, 9),
         (3, 10), (4, 5), (4, 6), (4, 9), (6, 7), (6, 9), (6, 10), (7, 8), (8, 9)],
    )
    model = MinorModel(
        host=host,
        pattern=clique(4),
        depth=1,
        branch_sets=(frozenset({0, 4, 5}), frozenset({1, 7}), frozenset({2, 8}), frozenset({3})),
        centers=(0, 1, 2, 3),
    )
    assert verify_minor_model(model).ok
    with pytest.raises(NormalizationError):
        normalize_to_tree_model(model)
    # the topological extraction only needs spanning trees and still works
    from splitterlab.minorsearch import topologize_clique_minor
    from splitterlab.minors import verify_topo_model

    t = topologize_clique_minor(model, thresh=2)
    assert t is not None and verify_topo_model(t).ok


def test_normalize_rejects_invalid_input():
    bad = MinorModel(
        host=cycle(9),
        pattern=clique(2),
        depth=0,
        branch_sets=(frozenset({0}), frozenset({5})),
        centers=(0, 5),
    )
    with pytest.raises(ValueError, match="invalid"):
        normalize_to_tree_model(bad)


def _random_model(rng: random.Random, max_n: int, depth: int) -> MinorModel | None:
    g = random_graph(rng, rng.randint(4, max_n), 0.45)
    model = grow_random_model(rng, g, rng.randint(2, min(4, g.n)), depth)
    if model is None or not model.pattern.edges:
        return None
    return model


def test_compose_depth_formula():
    assert composed_depth(1, 2) == 7
    assert composed_depth(0, 5) == 5
    assert composed_depth(2, 2) == 12


def test_compose_random_nested_models():
    rng = random.Random(20260810)
    checked = 0
    while checked < 40:
        inner = _random_model(rng, 12, rng.randint(0, 2))
        if inner is None or inner.pattern.n < 2:
            continue
        outer = _random_nested_outer(rng, inner.pattern, rng.randint(0, 2))
        if outer is None:
            continue
        composed = compose_models(outer, inner)
        assert composed.depth == composed_depth(inner.depth, outer.depth)
        assert verify_minor_model(composed).ok
        checked += 1


def _random_nested_outer(rng, mid: Graph, depth: int) -> MinorModel | None:
    return grow_random_model(rng, mid, rng.randint(1, min(3, mid.n)), depth)


def test_compose_rejects_mismatched_middle():
    inner = MinorModel.identity(cycle(5))
    outer = MinorModel.identity(cycle(6))
    with pytest.raises(ValueError, match="differ"):
        compose_models(outer, inner)


def test_model_json_round_trip():
    m = arcs_model()
    data = json.loads(json.dumps(model_to_json(m)))
    back = model_from_json(cycle(9), data)
    assert back == m
    assert verify_minor_model(back).ok


def test_verify_accepts_json_form():
    m = arcs_model()
    data = model_to_json(m)
    assert verify_minor_model(data, host=cycle(9)).ok
    with pytest.raises(ValueError, match="host"):
        verify_minor_model(data)
    topo = TopoMinorModel(
        host=cycle(6),
        pattern=clique(2),
        depth=1,
        branch_vertices=(0, 3),
        edge_paths={(0, 1): (0, 1, 2, 3)},
    )
    assert verify_topo_model(model_to_json(topo), host=cycle(6)).ok
    with pytest.raises(ValueError, match="not a minor-model"):
        verify_minor_model(model_to_json(topo), host=cycle(6))

    topo = TopoMinorModel(
        host=cycle(6),
        pattern=clique(2),
        depth=1,
        branch_vertices=(0, 3),
        edge_paths={(0, 1): (0, 1, 2, 3)},
    )
    data = json.loads(json.dumps(model_to_json(topo)))
    back = model_from_json(cycle(6), data)
    assert back.branch_vertices == topo.branch_vertices
    assert back.edge_paths == topo.edge_paths
