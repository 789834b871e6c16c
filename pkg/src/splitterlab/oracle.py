"""Brute-force enumeration oracles for small instances.

These deliberately take the dumb route: enumerate every family of
disjoint connected vertex sets / every simple path system / every
vertex subset. They are the ground truth the search module is tested
against and are only intended for hosts of at most ~10 vertices.
"""

from __future__ import annotations

from itertools import combinations

from .graph import Graph

ORACLE_MAX_VERTICES = 10


def _guard(g: Graph) -> None:
    if g.n > ORACLE_MAX_VERTICES:
        raise ValueError(f"oracle is limited to {ORACLE_MAX_VERTICES} host vertices, got {g.n}")


def connected_sets(g: Graph, max_size: int | None = None) -> list[frozenset[int]]:
    """All nonempty connected vertex sets, sorted for determinism."""
    found: set[frozenset[int]] = set()
    frontier = [frozenset([v]) for v in range(g.n)]
    found.update(frontier)
    while frontier:
        nxt = []
        for s in frontier:
            if max_size is not None and len(s) >= max_size:
                continue
            reach = {x for v in s for x in g.adjacency[v] if x not in s}
            for x in reach:
                t = s | {x}
                if t not in found:
                    found.add(t)
                    nxt.append(t)
        frontier = nxt
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def set_radius(g: Graph, s: frozenset[int]) -> int:
    """Radius of the induced subgraph; -1 if disconnected."""
    best = -1
    for c in s:
        dist = g.distances_within(c, s)
        if any(dist[w] < 0 for w in s):
            return -1
        ecc = max(int(dist[w]) for w in s)
        if best < 0 or ecc < best:
            best = ecc
    return best


def shallow_minor_present(g: Graph, h: Graph, d: int) -> bool:
    """Exhaustively decide whether h is a depth-d minor of g."""
    _guard(g)
    if h.n == 0 or h.n > g.n:
        return False
    usable = [s for s in connected_sets(g) if set_radius(g, s) <= d]
    adjacent: dict[tuple[int, int], bool] = {}

    def sets_adj(i: int, j: int) -> bool:
        key = (i, j) if i < j else (j, i)
        if key not in adjacent:
            a, b = usable[key[0]], usable[key[1]]
            adjacent[key] = any(g.has_edge(x, y) for x in a for y in b)
        return adjacent[key]

    order = sorted(range(h.n), key=lambda u: -h.degree(u))

    def assign(pos: int, chosen: list[int], used: frozenset[int]) -> bool:
        if pos == h.n:
            return True
        u = order[pos]
        for i, s in enumerate(usable):
            if s & used:
                continue
            ok = True
            for q in range(pos):
                if h.has_edge(u, order[q]) and not sets_adj(i, chosen[q]):
                    ok = False
                    break
            if ok and assign(pos + 1, chosen + [i], used | s):
                return True
        return False

    return assign(0, [], frozenset())


def _all_paths(g: Graph, a: int, b: int, max_len: int, banned: set[int]) -> list[tuple[int, ...]]:
    """Every simple a-b path of length <= max_len avoiding `banned` internally."""
    out: list[tuple[int, ...]] = []

    def walk(path: list[int]) -> None:
        last = path[-1]
        if last == b:
            out.append(tuple(path))
            return
        if len(path) - 1 >= max_len:
            return
        for x in g.adjacency[last]:
            if x in path:
                continue
            if x != b and x in banned:
                continue
            walk(path + [x])

    walk([a])
    return out


def topo_minor_present(g: Graph, h: Graph, d: int) -> bool:
    """Exhaustively decide whether h is a depth-d topological minor of g."""
    _guard(g)
    if h.n == 0 or h.n > g.n:
        return False
    max_len = 2 * d + 1
    edges = sorted(h.edges)

    def place(pos: int, images: list[int]) -> bool:
        if pos == h.n:
            return connect(0, images, set())
        for w in range(g.n):
            if w in images:
                continue
            if place(pos + 1, images + [w]):
                return True
        return False

    def connect(ei: int, images: list[int], used_internal: set[int]) -> bool:
        if ei == len(edges):
            return True
        u, v = edges[ei]
        banned = used_internal | set(images)
        for path in _all_paths(g, images[u], images[v], max_len, banned):
            internal = set(path[1:-1])
            if internal & banned:
                continue
            if connect(ei + 1, images, used_internal | internal):
                return True
        return False

    return place(0, [])


def max_scattered_brute(g: Graph, d: int) -> set[int]:
    """Maximum d-scattered set by checking every subset; lexicographic tie-break."""
    if g.n > 14:
        raise ValueError("subset enumeration is limited to 14 vertices")
    dist = g.all_pairs_distances()

    def scattered(sub: tuple[int, ...]) -> bool:
        return all(
            dist[u][v] < 0 or dist[u][v] > 2 * d for u, v in combinations(sub, 2)
        )

    for size in range(g.n, 0, -1):
        for sub in combinations(range(g.n), size):
            if scattered(sub):
                return set(sub)
    return set()
