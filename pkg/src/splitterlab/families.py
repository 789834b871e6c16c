"""Parametric graph family generators.

Generation is deterministic given (kind, params). Canonical vertex
numbering per kind:

  clique(m)               vertices 0..m-1
  cycle(n)                vertices 0..n-1 in cyclic order, n >= 3
  path(n)                 vertices 0..n-1 along the path
  star(k)                 center 0, leaves 1..k
  grid(rows, cols)        vertex at row r, column c has id r*cols + c
  subdivided_clique(m, t) hubs 0..m-1 first, then t subdivision vertices
                          per hub pair in lexicographic pair order
  erdos_renyi(n, pct, seed)  each pair kept with probability pct/100,
                          drawn pair-by-pair in lexicographic order from
                          random.Random(seed) (portable across platforms)
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .graph import Graph

KINDS = ("clique", "cycle", "path", "star", "grid", "subdivided_clique", "erdos_renyi")

_ARITY = {
    "clique": 1,
    "cycle": 1,
    "path": 1,
    "star": 1,
    "grid": 2,
    "subdivided_clique": 2,
    "erdos_renyi": 3,
}


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    params: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown family kind {self.kind!r}; expected one of {KINDS}")
        object.__setattr__(self, "params", tuple(int(p) for p in self.params))
        if len(self.params) != _ARITY[self.kind]:
            raise ValueError(
                f"{self.kind} takes {_ARITY[self.kind]} parameter(s), got {len(self.params)}"
            )


def clique(m: int) -> Graph:
    if m < 1:
        raise ValueError("clique needs at least 1 vertex")
    return Graph.from_edges(m, combinations(range(m), 2))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs at least 1 vertex")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star(leaves: int) -> Graph:
    if leaves < 0:
        raise ValueError("leaf count must be nonnegative")
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def grid(rows: int, cols: int) -> Graph:
    if rows < 1 or cols < 1:
        raise ValueError("grid sides must be positive")
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph.from_edges(rows * cols, edges)


def subdivided_clique(m: int, t: int) -> Graph:
    """K_m with every edge subdivided exactly t times; hubs are vertices 0..m-1."""
    if m < 1:
        raise ValueError("hub count must be positive")
    if t < 0:
        raise ValueError("subdivision count must be nonnegative")
    edges = []
    nxt = m
    for i, j in combinations(range(m), 2):
        if t == 0:
            edges.append((i, j))
            continue
        chain = [i] + list(range(nxt, nxt + t)) + [j]
        nxt += t
        edges.extend(zip(chain, chain[1:]))
    return Graph.from_edges(nxt, edges)


def erdos_renyi(n: int, percent: int, seed: int) -> Graph:
    if n < 1:
        raise ValueError("vertex count must be positive")
    if not 0 <= percent <= 100:
        raise ValueError("edge percentage must be in 0..100")
    rng = random.Random(seed)
    p = percent / 100.0
    edges = [e for e in combinations(range(n), 2) if rng.random() < p]
    return Graph.from_edges(n, edges)


_GENERATORS = {
    "clique": clique,
    "cycle": cycle,
    "path": path,
    "star": star,
    "grid": grid,
    "subdivided_clique": subdivided_clique,
    "erdos_renyi": erdos_renyi,
}


def generate(spec: FamilySpec) -> Graph:
    return _GENERATORS[spec.kind](*spec.params)


def hub_vertices(spec: FamilySpec) -> tuple[int, ...]:
    """The designated high-degree set for families that have one."""
    if spec.kind == "subdivided_clique":
        return tuple(range(spec.params[0]))
    if spec.kind == "star":
        return (0,)
    if spec.kind == "clique":
        return tuple(range(spec.params[0]))
    raise ValueError(f"family {spec.kind!r} has no designated hub set")
