"""Bounded-depth minor models: verification, normalization, composition.

A depth-d minor model maps each pattern vertex to a branch set: a
connected set of host vertices, every one within distance d of the
set's center inside the induced subgraph. Branch sets are pairwise
disjoint and every pattern edge is covered by a host edge between the
two branch sets.

A depth-d topological model instead maps pattern vertices to distinct
host vertices and pattern edges to host paths of length at most 2d+1,
pairwise vertex-disjoint except at shared endpoints.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations, product

from .graph import Graph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MinorModel:
    host: Graph
    pattern: Graph
    depth: int
    branch_sets: tuple[frozenset[int], ...]
    centers: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.depth < 0:
            raise ValueError("depth must be nonnegative")
        if len(self.branch_sets) != self.pattern.n or len(self.centers) != self.pattern.n:
            raise ValueError("model must provide one branch set and center per pattern vertex")
        for u in range(self.pattern.n):
            bs = self.branch_sets[u]
            if not bs:
                raise ValueError(f"branch set of pattern vertex {u} is empty")
            for w in bs:
                if not 0 <= w < self.host.n:
                    raise ValueError(f"branch set of {u} references host vertex {w} out of range")
            if self.centers[u] not in bs:
                raise ValueError(f"center {self.centers[u]} of pattern vertex {u} not in its branch set")

    @staticmethod
    def identity(g: Graph, depth: int = 0) -> "MinorModel":
        """g as a depth-0 (or deeper) minor of itself via singleton branch sets."""
        return MinorModel(
            host=g,
            pattern=g,
            depth=depth,
            branch_sets=tuple(frozenset([v]) for v in range(g.n)),
            centers=tuple(range(g.n)),
        )


@dataclass(frozen=True)
class TopoMinorModel:
    host: Graph
    pattern: Graph
    depth: int
    branch_vertices: tuple[int, ...]
    edge_paths: dict[tuple[int, int], tuple[int, ...]] = field(compare=False)

    def __post_init__(self) -> None:
        if self.depth < 0:
            raise ValueError("depth must be nonnegative")
        if len(self.branch_vertices) != self.pattern.n:
            raise ValueError("model must provide one branch vertex per pattern vertex")
        for w in self.branch_vertices:
            if not 0 <= w < self.host.n:
                raise ValueError(f"branch vertex {w} out of range")
        for e in self.pattern.edges:
            if e not in self.edge_paths:
                raise ValueError(f"missing path for pattern edge {e}")
        for e, path in self.edge_paths.items():
            if e not in self.pattern.edges:
                raise ValueError(f"path given for non-edge {e}")
            if not path:
                raise ValueError(f"empty path for edge {e}")
            for w in path:
                if not 0 <= w < self.host.n:
                    raise ValueError(f"path for {e} references host vertex {w} out of range")

    def path(self, u: int, v: int) -> tuple[int, ...]:
        key = (u, v) if u < v else (v, u)
        seq = self.edge_paths[key]
        return seq if key == (u, v) else tuple(reversed(seq))


@dataclass(frozen=True)
class Verification:
    ok: bool
    clause: str | None = None
    detail: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def _branch_depths(host: Graph, bs: frozenset[int], center: int) -> dict[int, int]:
    """Distances from the center inside the induced subgraph; missing = unreachable."""
    dist = host.distances_within(center, bs)
    return {w: int(dist[w]) for w in bs if dist[w] >= 0}


def verify_minor_model(model: MinorModel | dict, host: Graph | None = None) -> Verification:
    """Check the three model clauses; report the first violated one.

    Accepts either a model or its JSON dict form (host required then).
    """
    if isinstance(model, dict):
        if host is None:
            raise ValueError("verifying the JSON form requires the host graph")
        parsed = model_from_json(host, model)
        if not isinstance(parsed, MinorModel):
            raise ValueError("JSON payload is not a minor-model certificate")
        model = parsed
    owner: dict[int, int] = {}
    for u in range(model.pattern.n):
        for w in model.branch_sets[u]:
            if w in owner:
                return Verification(
                    False,
                    "branch-sets-disjoint",
                    f"host vertex {w} lies in branch sets of {owner[w]} and {u}",
                )
            owner[w] = u

    for u in range(model.pattern.n):
        depths = _branch_depths(model.host, model.branch_sets[u], model.centers[u])
        for w in model.branch_sets[u]:
            if w not in depths:
                return Verification(
                    False,
                    "branch-set-radius",
                    f"vertex {w} unreachable from center {model.centers[u]} inside branch set of {u}",
                )
            if depths[w] > model.depth:
                return Verification(
                    False,
                    "branch-set-radius",
                    f"vertex {w} at distance {depths[w]} > {model.depth} from center of {u}",
                )

    for u, v in sorted(model.pattern.edges):
        if not _sets_adjacent(model.host, model.branch_sets[u], model.branch_sets[v]):
            return Verification(
                False,
                "edge-covered",
                f"no host edge between branch sets of pattern edge ({u},{v})",
            )
    return Verification(True)


def _sets_adjacent(host: Graph, a: frozenset[int], b: frozenset[int]) -> bool:
    small, big = (a, b) if len(a) <= len(b) else (b, a)
    for w in small:
        for x in host.adjacency[w]:
            if x in big:
                return True
    return False


def verify_topo_model(model: TopoMinorModel | dict, host: Graph | None = None) -> Verification:
    if isinstance(model, dict):
        if host is None:
            raise ValueError("verifying the JSON form requires the host graph")
        parsed = model_from_json(host, model)
        if not isinstance(parsed, TopoMinorModel):
            raise ValueError("JSON payload is not a topological certificate")
        model = parsed
    if len(set(model.branch_vertices)) != len(model.branch_vertices):
        return Verification(False, "branch-vertices-distinct", "two pattern vertices share a host vertex")

    max_len = 2 * model.depth + 1
    internals_seen: dict[int, tuple[int, int]] = {}
    branch_set = set(model.branch_vertices)
    for u, v in sorted(model.pattern.edges):
        path = model.edge_paths[(u, v)]
        if path[0] != model.branch_vertices[u] or path[-1] != model.branch_vertices[v]:
            return Verification(False, "path-endpoints", f"path for ({u},{v}) does not join its branch vertices")
        if len(set(path)) != len(path):
            return Verification(False, "path-walk", f"path for ({u},{v}) repeats a vertex")
        for a, b in zip(path, path[1:]):
            if not model.host.has_edge(a, b):
                return Verification(False, "path-walk", f"path for ({u},{v}) uses non-edge ({a},{b})")
        if len(path) - 1 > max_len:
            return Verification(
                False, "path-length", f"path for ({u},{v}) has length {len(path) - 1} > {max_len}"
            )
        for w in path[1:-1]:
            if w in branch_set:
                return Verification(
                    False, "paths-disjoint", f"path for ({u},{v}) passes through branch vertex {w}"
                )
            if w in internals_seen:
                return Verification(
                    False,
                    "paths-disjoint",
                    f"vertex {w} internal to paths {internals_seen[w]} and ({u},{v})",
                )
            internals_seen[w] = (u, v)
    return Verification(True)


def as_minor_model(topo: TopoMinorModel) -> MinorModel:
    """Convert a topological model to an ordinary model at the same depth.

    Each branch set takes its branch vertex plus, for every incident
    pattern edge, the nearer half of the connecting path.
    """
    sets: list[set[int]] = [{bv} for bv in topo.branch_vertices]
    for u, v in sorted(topo.pattern.edges):
        path = topo.edge_paths[(u, v)]
        internal = path[1:-1]
        half = (len(path) - 1) // 2  # path length <= 2d+1, so halves have <= d edges
        sets[u].update(internal[:half])
        sets[v].update(internal[half:])
    return MinorModel(
        host=topo.host,
        pattern=topo.pattern,
        depth=topo.depth,
        branch_sets=tuple(frozenset(s) for s in sets),
        centers=tuple(topo.branch_vertices),
    )


# ---------------------------------------------------------------------------
# Normalization to tree-shaped branch sets


class NormalizationError(ValueError):
    pass


@dataclass(frozen=True)
class NormalizeInfo:
    sizes: tuple[int, ...]
    safe_bound: int
    tight_bound: int
    over_tight_bound: tuple[int, ...]  # pattern vertices exceeding the tight bound
    connecting_edges: dict[tuple[int, int], tuple[int, int]] = field(compare=False)


def _bfs_tree(host: Graph, vertices: frozenset[int], root: int) -> dict[int, int | None]:
    """Parent map of a BFS tree of the induced subgraph, smallest-id first."""
    parent: dict[int, int | None] = {root: None}
    queue = [root]
    while queue:
        nxt = []
        for w in queue:
            for x in host.adjacency[w]:
                if x in vertices and x not in parent:
                    parent[x] = w
                    nxt.append(x)
        queue = nxt
    return parent


def _tree_path_to_root(parent: dict[int, int | None], w: int) -> list[int]:
    path = [w]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])  # type: ignore[arg-type]
    return path


def _connecting_edge_candidates(model: MinorModel) -> dict[tuple[int, int], list[tuple[int, int]]]:
    """Host edges available to cover each pattern edge, oriented (in u-set, in v-set)."""
    out: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for u, v in sorted(model.pattern.edges):
        cands = []
        for a in sorted(model.branch_sets[u]):
            for b in model.host.adjacency[a]:
                if b in model.branch_sets[v]:
                    cands.append((a, b))
        if not cands:
            raise NormalizationError(f"input model covers no host edge for pattern edge ({u},{v})")
        out[(u, v)] = cands
    return out


def _extract_tree_set(
    host: Graph, current: frozenset[int], center: int, terminals: set[int], depth: int
) -> tuple[frozenset[int], int]:
    """Shrink `current` to the union of BFS-tree paths from a center to the terminals.

    Iterates until the vertex set stabilizes, re-deriving the center each
    pass; returns the set and its final center.
    """
    vertices = current
    while True:
        parent = _bfs_tree(host, vertices, center)
        kept: set[int] = {center}
        for t in terminals:
            kept.update(_tree_path_to_root(parent, t))
        new = frozenset(kept)
        if new == vertices:
            break
        vertices = new
        center = _best_center(host, vertices, depth)
    return vertices, center


def _best_center(host: Graph, vertices: frozenset[int], depth: int) -> int:
    """Smallest-id vertex of minimum eccentricity inside the induced subgraph."""
    best: tuple[int, int] | None = None
    for c in sorted(vertices):
        dist = host.distances_within(c, vertices)
        if any(dist[w] < 0 for w in vertices):
            continue
        ecc = max(int(dist[w]) for w in vertices)
        if best is None or ecc < best[0]:
            best = (ecc, c)
    if best is None or best[0] > depth:
        raise NormalizationError("no admissible center for shrunken branch set")
    return best[1]


def _induced_edge_count(host: Graph, vertices: frozenset[int]) -> int:
    return sum(1 for a, b in combinations(sorted(vertices), 2) if host.has_edge(a, b))


def _induced_is_tree(host: Graph, vertices: frozenset[int]) -> bool:
    return _induced_edge_count(host, vertices) == len(vertices) - 1


def _minimal_tree_subset(
    host: Graph, vertices: frozenset[int], terminals: set[int], depth: int
) -> tuple[frozenset[int], int] | None:
    """Exhaustive fallback: smallest subset containing the terminals that
    induces a tree of radius <= depth. Only used for small sets."""
    if len(vertices) > 16:
        return None
    optional = sorted(vertices - terminals)
    base = frozenset(terminals)
    for size in range(len(optional) + 1):
        for extra in combinations(optional, size):
            cand = base | frozenset(extra)
            if not cand:
                continue
            if not _induced_is_tree(host, cand):
                continue
            try:
                return cand, _best_center(host, cand, depth)
            except NormalizationError:
                continue
    return None


def _normalize_with_info(
    model: MinorModel, induced_trees: bool = True
) -> tuple[MinorModel, NormalizeInfo]:
    """Shrink branch sets to spanning-tree path unions.

    With induced_trees the shrunken sets must also induce acyclic
    subgraphs; that can be unsatisfiable (forced terminals may induce a
    cycle), in which case NormalizationError is raised. Without it the
    sets merely carry a spanning tree of bounded depth, which every
    valid model admits.
    """
    check = verify_minor_model(model)
    if not check:
        raise ValueError(f"input model invalid ({check.clause}): {check.detail}")

    candidates = _connecting_edge_candidates(model)
    depth_maps = {
        u: _branch_depths(model.host, model.branch_sets[u], model.centers[u])
        for u in range(model.pattern.n)
    }

    ordered = {
        e: sorted(cands, key=lambda ab, e=e: (depth_maps[e[0]][ab[0]] + depth_maps[e[1]][ab[1]], ab))
        for e, cands in candidates.items()
    }

    def attempt(choice: dict[tuple[int, int], tuple[int, int]]):
        terminals: dict[int, set[int]] = {u: set() for u in range(model.pattern.n)}
        for (u, v), (a, b) in choice.items():
            terminals[u].add(a)
            terminals[v].add(b)
        new_sets: list[frozenset[int]] = []
        new_centers: list[int] = []
        for u in range(model.pattern.n):
            terms = terminals[u] or {model.centers[u]}
            vs, center = _extract_tree_set(
                model.host, model.branch_sets[u], model.centers[u], terms, model.depth
            )
            if induced_trees and not _induced_is_tree(model.host, vs):
                fallback = _minimal_tree_subset(model.host, vs, terms, model.depth)
                if fallback is None:
                    return None
                vs, center = fallback
            new_sets.append(vs)
            new_centers.append(center)
        cand = MinorModel(
            host=model.host,
            pattern=model.pattern,
            depth=model.depth,
            branch_sets=tuple(new_sets),
            centers=tuple(new_centers),
        )
        return cand if verify_minor_model(cand) else None

    first_choice = {e: ordered[e][0] for e in ordered}
    result = attempt(first_choice)
    chosen = first_choice
    if result is None:
        # Re-chosen connecting edges can unblock tree extraction; cap the sweep.
        combos = 0
        for combo in product(*(ordered[e] for e in sorted(ordered))):
            combos += 1
            if combos > 64:
                break
            choice = dict(zip(sorted(ordered), combo))
            result = attempt(choice)
            if result is not None:
                chosen = choice
                break
    if result is None:
        raise NormalizationError("could not extract tree-shaped branch sets from this model")

    delta = max((model.pattern.degree(u) for u in range(model.pattern.n)), default=0)
    safe_bound = 1 + delta * model.depth
    tight_bound = max(1, 1 + delta * (model.depth - 1))
    sizes = tuple(len(s) for s in result.branch_sets)
    if any(size > safe_bound for size in sizes):
        raise NormalizationError(f"normalized branch set exceeds the size bound {safe_bound}")
    over = tuple(u for u, size in enumerate(sizes) if size > tight_bound)
    if over:
        logger.warning(
            "normalized branch sets of pattern vertices %s exceed the tight size bound %d",
            over,
            tight_bound,
        )
    info = NormalizeInfo(
        sizes=sizes,
        safe_bound=safe_bound,
        tight_bound=tight_bound,
        over_tight_bound=over,
        connecting_edges=chosen,
    )
    return result, info


def normalize_to_tree_model(model: MinorModel) -> MinorModel:
    """Shrink branch sets to induced trees, preserving validity at the same depth."""
    normalized, _ = _normalize_with_info(model)
    return normalized


# ---------------------------------------------------------------------------
# Composition


def composed_depth(r: int, s: int) -> int:
    """Depth bound when a depth-s model is pulled back through a depth-r model."""
    return 2 * r * s + r + s


def compose_models(outer: MinorModel, inner: MinorModel) -> MinorModel:
    """Pull a model of H in M back through a model of M in G, giving H in G."""
    if outer.host != inner.pattern:
        raise ValueError("outer host and inner pattern graphs differ")
    r, s = inner.depth, outer.depth
    target = composed_depth(r, s)

    sets: list[frozenset[int]] = []
    centers: list[int] = []
    for u in range(outer.pattern.n):
        merged: set[int] = set()
        for m in outer.branch_sets[u]:
            merged.update(inner.branch_sets[m])
        composed = frozenset(merged)
        dist_best: tuple[int, int] | None = None
        for c in sorted(composed):
            dist = inner.host.distances_within(c, composed)
            if any(dist[w] < 0 for w in composed):
                continue
            ecc = max(int(dist[w]) for w in composed)
            if dist_best is None or ecc < dist_best[0]:
                dist_best = (ecc, c)
        if dist_best is None:
            raise ValueError(f"composed branch set of {u} is disconnected")
        if dist_best[0] > target:
            raise ValueError(
                f"composed branch set of {u} has radius {dist_best[0]} > bound {target}"
            )
        sets.append(composed)
        centers.append(dist_best[1])

    model = MinorModel(
        host=inner.host,
        pattern=outer.pattern,
        depth=target,
        branch_sets=tuple(sets),
        centers=tuple(centers),
    )
    check = verify_minor_model(model)
    if not check:
        raise ValueError(f"composition produced an invalid model ({check.clause}): {check.detail}")
    return model


# ---------------------------------------------------------------------------
# Certificate JSON


def graph_to_json(g: Graph) -> dict:
    return {"n": g.n, "edges": [[u, v] for u, v in sorted(g.edges)]}


def graph_from_json(data: dict) -> Graph:
    return Graph.from_edges(int(data["n"]), [tuple(e) for e in data["edges"]])


def model_to_json(model: MinorModel | TopoMinorModel) -> dict:
    if isinstance(model, MinorModel):
        return {
            "kind": "minor",
            "depth": model.depth,
            "pattern": graph_to_json(model.pattern),
            "branch_sets": {str(u): sorted(model.branch_sets[u]) for u in range(model.pattern.n)},
            "centers": {str(u): model.centers[u] for u in range(model.pattern.n)},
        }
    return {
        "kind": "topo",
        "depth": model.depth,
        "pattern": graph_to_json(model.pattern),
        "branch_vertices": {str(u): model.branch_vertices[u] for u in range(model.pattern.n)},
        "edge_paths": {f"{u}-{v}": list(p) for (u, v), p in sorted(model.edge_paths.items())},
    }


def model_from_json(host: Graph, data: dict) -> MinorModel | TopoMinorModel:
    pattern = graph_from_json(data["pattern"])
    depth = int(data["depth"])
    if data["kind"] == "minor":
        return MinorModel(
            host=host,
            pattern=pattern,
            depth=depth,
            branch_sets=tuple(
                frozenset(data["branch_sets"][str(u)]) for u in range(pattern.n)
            ),
            centers=tuple(int(data["centers"][str(u)]) for u in range(pattern.n)),
        )
    if data["kind"] == "topo":
        paths: dict[tuple[int, int], tuple[int, ...]] = {}
        for key, seq in data["edge_paths"].items():
            u, v = key.split("-")
            paths[(int(u), int(v))] = tuple(seq)
        return TopoMinorModel(
            host=host,
            pattern=pattern,
            depth=depth,
            branch_vertices=tuple(int(data["branch_vertices"][str(u)]) for u in range(pattern.n)),
            edge_paths=paths,
        )
    raise ValueError(f"unknown certificate kind {data['kind']!r}")
