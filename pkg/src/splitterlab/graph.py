"""Immutable simple undirected graphs and their distance machinery.

Vertices are dense integer ids 0..n-1. Distances between vertices in
different components are reported as UNREACHABLE, which compares larger
than any finite bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple

import numpy as np

from . import kernels

UNREACHABLE = -1


def _check_edge(n: int, u: int, v: int) -> tuple[int, int]:
    if u == v:
        raise ValueError(f"self-loop at vertex {u}")
    if not (0 <= u < n and 0 <= v < n):
        raise ValueError(f"edge ({u},{v}) out of range for n={n}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; immutable and safe to share."""

    n: int
    edges: frozenset[tuple[int, int]]

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        canon = set()
        for u, v in edges:
            e = _check_edge(n, u, v)
            if e in canon:
                raise ValueError(f"duplicate edge {e}")
            canon.add(e)
        return Graph(n, frozenset(canon))

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def _csr(self) -> tuple[np.ndarray, np.ndarray]:
        indptr = np.zeros(self.n + 1, dtype=np.int32)
        degs = [len(a) for a in self.adjacency]
        np.cumsum(degs, out=indptr[1:])
        indices = np.empty(int(indptr[-1]), dtype=np.int32)
        pos = 0
        for a in self.adjacency:
            for v in a:
                indices[pos] = v
                pos += 1
        return indptr, indices

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return False
        return ((u, v) if u < v else (v, u)) in self.edges

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def _check_vertex(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise ValueError(f"vertex {v} out of range for n={self.n}")

    def distances_from(self, v: int, cutoff: int = -1) -> np.ndarray:
        """BFS distance array from v; UNREACHABLE marks other components."""
        self._check_vertex(v)
        indptr, indices = self._csr
        dist = np.full(self.n, UNREACHABLE, dtype=np.int32)
        kernels.bfs_fill(indptr, indices, v, cutoff, dist)
        return dist

    def distances_within(self, v: int, subset: Iterable[int], cutoff: int = -1) -> np.ndarray:
        """BFS distances from v in the subgraph induced by `subset`."""
        self._check_vertex(v)
        indptr, indices = self._csr
        mask = np.zeros(self.n, dtype=np.uint8)
        for u in subset:
            mask[u] = 1
        dist = np.full(self.n, UNREACHABLE, dtype=np.int32)
        kernels.bfs_fill_masked(indptr, indices, v, cutoff, mask, dist)
        return dist

    def all_pairs_distances(self) -> np.ndarray:
        indptr, indices = self._csr
        out = np.full((self.n, self.n), UNREACHABLE, dtype=np.int32)
        kernels.all_pairs_fill(indptr, indices, out)
        return out

    def distance(self, u: int, v: int) -> int:
        """Pairwise distance; UNREACHABLE when u and v are disconnected."""
        self._check_vertex(v)
        return int(self.distances_from(u)[v])

    def connected_within(self, subset: Iterable[int]) -> bool:
        """True iff the induced subgraph on `subset` is connected (or empty)."""
        sub = list(subset)
        if not sub:
            return True
        dist = self.distances_within(sub[0], sub)
        return all(dist[u] >= 0 for u in sub)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


class Deletion(NamedTuple):
    graph: Graph
    old_to_new: dict[int, int]
    new_to_old: tuple[int, ...]


def ball(g: Graph, v: int, d: int) -> set[int]:
    """Vertices at BFS distance <= d from v, including v."""
    g._check_vertex(v)
    if d < 0:
        raise ValueError("radius must be nonnegative")
    dist = g.distances_from(v, cutoff=d)
    return {u for u in range(g.n) if 0 <= dist[u] <= d}


def ball_within(g: Graph, v: int, d: int, subset: Iterable[int]) -> set[int]:
    """Radius-d ball around v in the subgraph induced by `subset`."""
    dist = g.distances_within(v, subset, cutoff=d)
    return {u for u in range(g.n) if 0 <= dist[u] <= d}


def delete_vertices(g: Graph, s: Iterable[int]) -> Deletion:
    """Induced subgraph on V(g) minus s, with the id remapping."""
    drop = set(s)
    for v in drop:
        g._check_vertex(v)
    survivors = [v for v in range(g.n) if v not in drop]
    old_to_new = {v: i for i, v in enumerate(survivors)}
    edges = [
        (old_to_new[u], old_to_new[v])
        for u, v in g.edges
        if u not in drop and v not in drop
    ]
    return Deletion(Graph.from_edges(len(survivors), edges), old_to_new, tuple(survivors))


def induced_subgraph(g: Graph, keep: Iterable[int]) -> Deletion:
    keep_set = set(keep)
    return delete_vertices(g, (v for v in range(g.n) if v not in keep_set))


def power_graph(g: Graph, k: int) -> Graph:
    """Graph on the same vertices with edges between all pairs at distance 1..k."""
    if k < 1:
        raise ValueError("power exponent must be >= 1")
    edges = []
    for u in range(g.n):
        dist = g.distances_from(u, cutoff=k)
        for v in range(u + 1, g.n):
            if 0 < dist[v] <= k:
                edges.append((u, v))
    return Graph.from_edges(g.n, edges)


def is_scattered(g: Graph, x: Iterable[int], d: int) -> tuple[bool, tuple[int, int] | None]:
    """Check pairwise distance > 2d over x; on failure return one violating pair."""
    if d < 0:
        raise ValueError("radius must be nonnegative")
    xs = sorted(set(x))
    for v in xs:
        g._check_vertex(v)
    for i, u in enumerate(xs):
        dist = g.distances_from(u, cutoff=2 * d)
        for v in xs[i + 1 :]:
            if 0 <= dist[v] <= 2 * d:
                return False, (u, v)
    return True, None
