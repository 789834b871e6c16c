"""Budgeted searches for bounded-depth minors.

find_shallow_minor enumerates center tuples and grows branch sets
monotonically; the search is exhaustive when the node budget is not
hit, so "absent" is a proof and "unknown" is an honest truncation.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations, permutations

from .families import clique
from .graph import Graph
from .minors import (
    MinorModel,
    TopoMinorModel,
    _bfs_tree,
    _normalize_with_info,
    verify_minor_model,
    verify_topo_model,
)

CLIQUE_PATTERN_MAX = 8
GENERAL_PATTERN_MAX = 6


class SearchStatus(Enum):
    FOUND = "found"
    ABSENT = "absent"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class SearchResult:
    status: SearchStatus
    model: MinorModel | TopoMinorModel | None
    explored: int

    def __bool__(self) -> bool:
        return self.status is SearchStatus.FOUND


class _BudgetExceeded(Exception):
    pass


class _Ticker:
    __slots__ = ("nodes", "budget")

    def __init__(self, budget: int | None):
        self.nodes = 0
        self.budget = budget

    def tick(self) -> None:
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise _BudgetExceeded


def is_clique(g: Graph) -> bool:
    return g.m == g.n * (g.n - 1) // 2


def _check_pattern_guard(h: Graph, op: str) -> None:
    if h.n < 1:
        raise ValueError("pattern must have at least one vertex")
    if is_clique(h):
        if h.n > CLIQUE_PATTERN_MAX:
            raise ValueError(
                f"{op} handles clique patterns up to K_{CLIQUE_PATTERN_MAX}; "
                "use the enumeration oracle for anything larger"
            )
    elif h.n > GENERAL_PATTERN_MAX:
        raise ValueError(
            f"{op} handles general patterns up to {GENERAL_PATTERN_MAX} vertices; "
            "use the enumeration oracle for anything larger"
        )


def _center_tuples(g: Graph, h: Graph):
    if is_clique(h):
        return combinations(range(g.n), h.n)
    return permutations(range(g.n), h.n)


def find_shallow_minor(
    g: Graph, h: Graph, d: int, budget: int | None = None
) -> SearchResult:
    """Search for a depth-d minor model of h in g.

    Exhaustive over center tuples and monotone branch-set growth; the
    tri-state result distinguishes a refutation from budget truncation.
    """
    _check_pattern_guard(h, "find_shallow_minor")
    if d < 0:
        raise ValueError("depth must be nonnegative")
    ticker = _Ticker(budget)
    if h.n > g.n:
        return SearchResult(SearchStatus.ABSENT, None, 0)

    apd = g.all_pairs_distances()
    pattern_edges = sorted(h.edges)
    balls = [frozenset(v for v in range(g.n) if 0 <= apd[c][v] <= d) for c in range(g.n)]

    truncated = False
    for centers in _center_tuples(g, h):
        ok = True
        for u, v in pattern_edges:
            duv = apd[centers[u]][centers[v]]
            if duv < 0 or duv > 2 * d + 1:
                ok = False
                break
        if not ok:
            continue
        try:
            grow = _grow_branch_sets_masked if g.n <= 64 else _grow_branch_sets
            model = grow(g, h, d, centers, balls, pattern_edges, ticker)
        except _BudgetExceeded:
            truncated = True
            break
        if model is not None:
            assert verify_minor_model(model)
            return SearchResult(SearchStatus.FOUND, model, ticker.nodes)
    status = SearchStatus.UNKNOWN if truncated else SearchStatus.ABSENT
    return SearchResult(status, None, ticker.nodes)


def _grow_branch_sets(g, h, d, centers, balls, pattern_edges, ticker):
    k = h.n
    owner = [-1] * g.n
    branch: list[set[int]] = []
    for i, c in enumerate(centers):
        owner[c] = i
        branch.append({c})
    visited: set[tuple[frozenset[int], ...]] = set()

    def sets_adjacent(i: int, j: int) -> bool:
        a, b = branch[i], branch[j]
        small, big = (a, b) if len(a) <= len(b) else (b, a)
        return any(x in big for w in small for x in g.adjacency[w])

    def radius_ok(i: int) -> bool:
        dist = g.distances_within(centers[i], branch[i])
        return all(0 <= dist[w] <= d for w in branch[i])

    def reachable(i: int) -> set[int]:
        return {w for w in balls[centers[i]] if owner[w] == -1 or owner[w] == i}

    def rec() -> MinorModel | None:
        ticker.tick()
        key = tuple(frozenset(b) for b in branch)
        if key in visited:
            return None
        visited.add(key)

        unsat = [e for e in pattern_edges if not sets_adjacent(*e)]
        if not unsat and all(radius_ok(i) for i in range(k)):
            return MinorModel(
                host=g,
                pattern=h,
                depth=d,
                branch_sets=tuple(frozenset(b) for b in branch),
                centers=tuple(centers),
            )
        if unsat:
            # Every uncovered pattern edge must stay connectable.
            reach = [reachable(i) for i in range(k)]
            for u, v in unsat:
                if not any(x in reach[v] for w in reach[u] for x in g.adjacency[w]):
                    return None

        cands: list[tuple[int, int, int]] = []
        for i in range(k):
            cball = balls[centers[i]]
            seen: set[int] = set()
            for w in branch[i]:
                for x in g.adjacency[w]:
                    if owner[x] == -1 and x in cball and x not in seen:
                        seen.add(x)
                        helps = unsat and i in unsat[0] and any(
                            y in branch[unsat[0][1] if i == unsat[0][0] else unsat[0][0]]
                            for y in g.adjacency[x]
                        )
                        cands.append((0 if helps else 1, i, x))
        cands.sort()
        for _, i, x in cands:
            owner[x] = i
            branch[i].add(x)
            result = rec()
            if result is not None:
                return result
            branch[i].remove(x)
            owner[x] = -1
        return None

    return rec()


def _grow_branch_sets_masked(g, h, d, centers, balls, pattern_edges, ticker):
    """Bitmask twin of _grow_branch_sets for hosts of at most 64 vertices.

    Candidate order, pruning, and node accounting match the set-based
    version exactly, so both produce identical certificates and counts.
    """
    k = h.n
    adj = [0] * g.n
    for u, v in g.edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    ball_mask = [0] * k
    for i, c in enumerate(centers):
        for w in balls[c]:
            ball_mask[i] |= 1 << w

    branch = [1 << c for c in centers]
    nbr = [adj[c] for c in centers]  # union of members' adjacency
    owned = 0
    for c in centers:
        owned |= 1 << c

    def bits(mask):
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def neighbor_of(mask):
        out = 0
        for w in bits(mask):
            out |= adj[w]
        return out

    def radius_ok(i):
        members = list(bits(branch[i]))
        dist = g.distances_within(centers[i], members)
        return all(0 <= dist[w] <= d for w in members)

    visited: set[tuple[int, ...]] = set()

    def rec():
        nonlocal owned
        ticker.tick()
        key = tuple(branch)
        if key in visited:
            return None
        visited.add(key)

        unsat = [e for e in pattern_edges if not nbr[e[0]] & branch[e[1]]]
        if not unsat and all(radius_ok(i) for i in range(k)):
            return MinorModel(
                host=g,
                pattern=h,
                depth=d,
                branch_sets=tuple(frozenset(bits(branch[i])) for i in range(k)),
                centers=tuple(centers),
            )
        if unsat:
            free = ~owned
            reach = [ball_mask[i] & (free | branch[i]) for i in range(k)]
            for u, v in unsat:
                if not neighbor_of(reach[u]) & reach[v]:
                    return None

        first = unsat[0] if unsat else None
        cands = []
        for i in range(k):
            cand_mask = nbr[i] & ~owned & ball_mask[i]
            for x in bits(cand_mask):
                helps = (
                    first is not None
                    and i in first
                    and adj[x] & branch[first[1] if i == first[0] else first[0]]
                )
                cands.append((0 if helps else 1, i, x))
        cands.sort()
        for _, i, x in cands:
            bit = 1 << x
            owned |= bit
            branch[i] |= bit
            old_nbr = nbr[i]
            nbr[i] |= adj[x]
            result = rec()
            if result is not None:
                return result
            nbr[i] = old_nbr
            branch[i] &= ~bit
            owned &= ~bit
        return None

    return rec()


def find_topo_minor(
    g: Graph, h: Graph, d: int, budget: int | None = None
) -> SearchResult:
    """Backtracking disjoint-path search for a depth-d topological model of h in g."""
    _check_pattern_guard(h, "find_topo_minor")
    if d < 0:
        raise ValueError("depth must be nonnegative")
    ticker = _Ticker(budget)
    if h.n > g.n:
        return SearchResult(SearchStatus.ABSENT, None, 0)

    apd = g.all_pairs_distances()
    pattern_edges = sorted(h.edges)
    max_len = 2 * d + 1

    truncated = False
    for images in _center_tuples(g, h):
        ok = all(
            0 <= apd[images[u]][images[v]] <= max_len for u, v in pattern_edges
        )
        if not ok:
            continue
        try:
            model = _route_paths(g, h, d, images, pattern_edges, apd, max_len, ticker)
        except _BudgetExceeded:
            truncated = True
            break
        if model is not None:
            assert verify_topo_model(model)
            return SearchResult(SearchStatus.FOUND, model, ticker.nodes)
    status = SearchStatus.UNKNOWN if truncated else SearchStatus.ABSENT
    return SearchResult(status, None, ticker.nodes)


def _route_paths(g, h, d, images, pattern_edges, apd, max_len, ticker):
    image_set = set(images)
    used: set[int] = set()
    paths: dict[tuple[int, int], tuple[int, ...]] = {}

    def connect(ei: int) -> bool:
        ticker.tick()
        if ei == len(pattern_edges):
            return True
        u, v = pattern_edges[ei]
        a, b = images[u], images[v]

        def walk(path: list[int]) -> bool:
            ticker.tick()
            last = path[-1]
            if last == b:
                internal = set(path[1:-1])
                used.update(internal)
                paths[(u, v)] = tuple(path)
                if connect(ei + 1):
                    return True
                used.difference_update(internal)
                del paths[(u, v)]
                return False
            remaining = max_len - (len(path) - 1)
            if remaining <= 0:
                return False
            for x in g.adjacency[last]:
                if x in path or (x != b and (x in image_set or x in used)):
                    continue
                hop = apd[x][b]
                if hop < 0 or hop > remaining - 1:
                    continue
                if walk(path + [x]):
                    return True
            return False

        return walk([a])

    if connect(0):
        return TopoMinorModel(
            host=g, pattern=h, depth=d, branch_vertices=tuple(images), edge_paths=dict(paths)
        )
    return None


# ---------------------------------------------------------------------------
# Clique-minor depth profile


@dataclass(frozen=True)
class CliqueProfile:
    """Per-depth largest clique admitted as a bounded-depth minor."""

    d_max: int
    m_max: int
    omegas: tuple[int, ...]
    truncated: tuple[bool, ...]  # budget hit: the recorded value is a lower bound
    capped: tuple[bool, ...]  # the m_max cap binds: read the value as ">= m_max"

    def omega(self, d: int) -> int:
        return self.omegas[d]


def clique_profile(
    g: Graph, d_max: int, m_max: int = CLIQUE_PATTERN_MAX, budget: int | None = None
) -> CliqueProfile:
    """Largest m <= m_max with K_m a depth-d minor of g, for each d <= d_max."""
    if m_max < 1 or m_max > CLIQUE_PATTERN_MAX:
        raise ValueError(f"m_max must be in 1..{CLIQUE_PATTERN_MAX} (clique search guard)")
    if d_max < 0:
        raise ValueError("d_max must be nonnegative")
    omegas: list[int] = []
    truncated: list[bool] = []
    capped: list[bool] = []
    prev = 0
    for d in range(d_max + 1):
        m = prev
        trunc = False
        while m < min(m_max, g.n):
            result = find_shallow_minor(g, clique(m + 1), d, budget=budget)
            if result.status is SearchStatus.FOUND:
                m += 1
            elif result.status is SearchStatus.ABSENT:
                break
            else:
                trunc = True
                break
        omegas.append(m)
        truncated.append(trunc)
        capped.append(m == m_max)
        prev = m
    return CliqueProfile(
        d_max=d_max,
        m_max=m_max,
        omegas=tuple(omegas),
        truncated=tuple(truncated),
        capped=tuple(capped),
    )


# ---------------------------------------------------------------------------
# Clique minor -> topological clique minor at depth 3d+1


def topologize_depth(d: int) -> int:
    return 3 * d + 1


def topologize_clique_minor(model: MinorModel, thresh: int = 2) -> TopoMinorModel | None:
    """Rebuild a clique minor model as a topological clique model at depth 3d+1.

    Works on the tree-normalized model: in each branch tree extended by
    its chosen connecting edges, a spread node with at least `thresh`
    children provides the fan-out that routes connecting paths through
    pairwise disjoint subtrees. Consumes at most two fresh helper
    vertices per realized edge and reports the largest clique the
    greedy assembly sustains; None when fewer than two pattern vertices
    offer a spread node.
    """
    if not is_clique(model.pattern):
        raise ValueError("only clique patterns can be topologized")
    if thresh < 2:
        raise ValueError("children threshold must be at least 2")
    # spanning trees suffice here: all routing walks BFS parent maps
    normalized, info = _normalize_with_info(model, induced_trees=False)
    host = normalized.host
    m = normalized.pattern.n
    d = normalized.depth
    out_depth = topologize_depth(d)
    max_len = 2 * out_depth + 1
    eps = info.connecting_edges  # (u,v) u<v -> (host vertex in set u, host vertex in set v)

    parents = {
        u: _bfs_tree(host, normalized.branch_sets[u], normalized.centers[u])
        for u in range(m)
    }
    depth_of = {
        u: {w: len(_path_to_root(parents[u], w)) - 1 for w in normalized.branch_sets[u]}
        for u in range(m)
    }

    def eps_endpoints(u: int, v: int) -> tuple[int, int]:
        """(endpoint in u's set, endpoint in v's set) of the chosen connecting edge."""
        a, b = eps[(u, v) if u < v else (v, u)]
        return (a, b) if u < v else (b, a)

    # children counts in the extended tree: tree children plus appended
    # connecting-edge endpoints hanging under their attachment vertex
    children: dict[int, dict[int, int]] = {u: {w: 0 for w in normalized.branch_sets[u]} for u in range(m)}
    for u in range(m):
        for w, p in parents[u].items():
            if p is not None:
                children[u][p] += 1
        for v in range(m):
            if v == u:
                continue
            a_u, _ = eps_endpoints(u, v)
            children[u][a_u] += 1

    spread: dict[int, int] = {}
    for u in range(m):
        best = None
        for w in sorted(normalized.branch_sets[u]):
            c = children[u][w]
            if c >= thresh:
                key = (-c, depth_of[u][w], w)
                if best is None or key < best:
                    best = key
        if best is not None:
            spread[u] = best[2]

    def tree_path(u: int, a: int, b: int) -> list[int]:
        pa = _path_to_root(parents[u], a)
        pb = _path_to_root(parents[u], b)
        sa, sb = set(pa), set(pb)
        lca = next(w for w in pa if w in sb)
        up = pa[: pa.index(lca) + 1]
        down = pb[: pb.index(lca)]
        return up + list(reversed(down))

    def subtree_child(u: int, node: int) -> int | None:
        """Child of spread[u] on the path down to `node`; None if not below."""
        path = _path_to_root(parents[u], node)
        s = spread[u]
        if s not in path:
            return None
        i = path.index(s)
        return path[i - 1] if i > 0 else None

    # successor arcs: one target per child subtree of the spread node
    succ: dict[int, list[int]] = {u: [] for u in spread}
    for u in spread:
        per_child: dict[int, int] = {}
        for v in range(m):
            if v == u:
                continue
            a_u, _ = eps_endpoints(u, v)
            if a_u == spread[u]:
                # appended endpoint hangs directly under the spread node
                per_child.setdefault(-1 - v, v)
                continue
            c = subtree_child(u, a_u)
            if c is not None and (c not in per_child or v < per_child[c]):
                per_child[c] = v
        succ[u] = sorted(set(per_child.values()))

    realized: list[int] = []
    consumed: set[int] = set()
    used_host: set[int] = set()
    committed: dict[tuple[int, int], tuple[int, ...]] = {}

    def down_to_eps(u: int, v: int) -> list[int]:
        a_u, b_v = eps_endpoints(u, v)
        return tree_path(u, spread[u], a_u) + [b_v]

    def direct_route(p: int, q: int) -> list[int] | None:
        a_p, a_q = eps_endpoints(p, q)
        return tree_path(p, spread[p], a_p) + list(reversed(tree_path(q, spread[q], a_q)))

    def helper_route(p: int, q: int, x: int, y: int) -> list[int]:
        e_x, e_y = eps_endpoints(x, y)
        seg1 = down_to_eps(p, x)  # ends inside x's tree
        seg2 = tree_path(x, seg1[-1], e_x)
        seg4 = tree_path(y, e_y, down_to_eps(q, y)[-1])
        seg5 = list(reversed(down_to_eps(q, y)))
        return seg1 + seg2[1:] + seg4 + seg5[1:]

    def admissible(path: list[int], p: int, q: int) -> bool:
        if len(set(path)) != len(path) or len(path) - 1 > max_len:
            return False
        if path[0] != spread[p] or path[-1] != spread[q]:
            return False
        branch_vs = {spread[z] for z in realized} | {spread[p], spread[q]}
        for w in path[1:-1]:
            if w in used_host or w in branch_vs:
                return False
        for a, b in zip(path, path[1:]):
            if not host.has_edge(a, b):
                return False
        return True

    for q in sorted(spread):
        if q in consumed:
            continue
        if spread[q] in used_host:
            continue
        trial_paths: dict[tuple[int, int], tuple[int, ...]] = {}
        trial_used: set[int] = set()
        trial_consumed: set[int] = set()
        ok = True
        for p in realized:
            route = None
            cand = direct_route(p, q)
            if cand is not None and not (set(cand[1:-1]) & trial_used) and admissible(cand, p, q):
                route = cand
            if route is None:
                for x in succ.get(p, []):
                    if x in consumed or x in trial_consumed or x == q:
                        continue
                    for y in succ.get(q, []):
                        if y in consumed or y in trial_consumed or y in (x, p):
                            continue
                        cand = helper_route(p, q, x, y)
                        if not (set(cand[1:-1]) & trial_used) and admissible(cand, p, q):
                            route = cand
                            trial_consumed.update({x, y})
                            break
                    if route is not None:
                        break
            if route is None:
                ok = False
                break
            trial_paths[(p, q)] = tuple(route)
            trial_used.update(route[1:-1])
        if ok:
            realized.append(q)
            consumed.add(q)
            consumed.update(trial_consumed)
            used_host.update(trial_used)
            committed.update(trial_paths)

    if len(realized) < 2:
        return None
    order = sorted(realized)
    index = {z: i for i, z in enumerate(order)}
    edge_paths: dict[tuple[int, int], tuple[int, ...]] = {}
    for (p, q), path in committed.items():
        i, j = index[p], index[q]
        if i < j:
            edge_paths[(i, j)] = path
        else:
            edge_paths[(j, i)] = tuple(reversed(path))
    out = TopoMinorModel(
        host=host,
        pattern=clique(len(order)),
        depth=out_depth,
        branch_vertices=tuple(spread[z] for z in order),
        edge_paths=edge_paths,
    )
    check = verify_topo_model(out)
    if not check:
        raise AssertionError(f"constructed topological model invalid: {check.clause} {check.detail}")
    return out


def _path_to_root(parent: dict[int, int | None], w: int) -> list[int]:
    path = [w]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])  # type: ignore[arg-type]
    return path
