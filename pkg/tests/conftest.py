import random

import pytest

from splitterlab.graph import Graph
from splitterlab.minors import MinorModel, verify_minor_model


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def grow_random_model(rng: random.Random, host: Graph, k: int, depth: int) -> MinorModel | None:
    """Random disjoint branch sets of bounded radius; pattern = contact graph."""
    if host.n < k:
        return None
    order = list(range(host.n))
    rng.shuffle(order)
    centers = order[:k]
    owner = {c: i for i, c in enumerate(centers)}
    sets = [{c} for c in centers]
    for _ in range(rng.randint(0, 2 * host.n)):
        i = rng.randrange(k)
        frontier = sorted(
            {
                x
                for w in sets[i]
                for x in host.adjacency[w]
                if x not in owner
                and host.distances_within(centers[i], sets[i] | {x})[x] <= depth
            }
        )
        if frontier:
            pick = rng.choice(frontier)
            owner[pick] = i
            sets[i].add(pick)
    edges = set()
    for u, v in host.edges:
        if u in owner and v in owner and owner[u] != owner[v]:
            edges.add(tuple(sorted((owner[u], owner[v]))))
    pattern = Graph.from_edges(k, edges)
    model = MinorModel(
        host=host,
        pattern=pattern,
        depth=depth,
        branch_sets=tuple(frozenset(s) for s in sets),
        centers=tuple(centers),
    )
    assert verify_minor_model(model).ok
    return model


def seeded_corpus(seed: int, count: int, n_lo: int, n_hi: int, ps=(0.2, 0.35, 0.5)):
    rng = random.Random(seed)
    return [random_graph(rng, rng.randint(n_lo, n_hi), rng.choice(ps)) for _ in range(count)]


def connected_corpus(seed: int, count: int, n_lo: int, n_hi: int):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        g = random_graph(rng, rng.randint(n_lo, n_hi), rng.choice([0.3, 0.45, 0.6]))
        if g.n and all(g.distances_from(0)[v] >= 0 for v in range(g.n)):
            out.append(g)
    return out


@pytest.fixture(scope="session")
def small_corpus():
    return seeded_corpus(20260810, 60, 2, 8)
