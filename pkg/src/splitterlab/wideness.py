"""Scattered sets and the iterative wideness construction.

The construction runs d rounds. Round i starts from a set X_i that is
i-scattered after deleting S_i and either extends the scattering radius
by one (deleting at most a capped number of extra vertices) or aborts
with a verified clique-minor witness at depth <= 3i+1. Three outcomes:
a met certificate, a density witness, or an honest "target unmet"
certificate carrying whatever scattered set was achieved.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .families import subdivided_clique
from .graph import Graph, ball_within, delete_vertices, is_scattered, power_graph
from .minors import MinorModel, compose_models, model_from_json, model_to_json, verify_minor_model
from .families import clique as make_clique


# ---------------------------------------------------------------------------
# Exact scattered sets

EXACT_SOLVER_MAX = 14


def max_scattered_exact(g: Graph, d: int, size_cap: int | None = None) -> set[int]:
    """Maximum d-scattered set via branch and bound on the 2d-th power graph.

    Deterministic: returns the lexicographically least optimum. With
    size_cap, stops as soon as a set of that size is found.
    """
    if g.n > EXACT_SOLVER_MAX:
        raise ValueError(
            f"exact solver is limited to {EXACT_SOLVER_MAX} vertices (got {g.n}); "
            "use uqw_construct for a heuristic scattered set"
        )
    if g.n == 0:
        return set()
    conflict = power_graph(g, 2 * d) if d > 0 else Graph.from_edges(g.n, [])
    neigh = [set(conflict.adjacency[v]) for v in range(g.n)]

    best: list[int] = []
    done = False

    def bound_ok(chosen: int, start: int) -> bool:
        return chosen + (g.n - start) > len(best)

    def rec(start: int, chosen: list[int], blocked: set[int]) -> None:
        nonlocal best, done
        if done:
            return
        if len(chosen) > len(best):
            best = list(chosen)
            if size_cap is not None and len(best) >= size_cap:
                done = True
                return
        for v in range(start, g.n):
            if v in blocked:
                continue
            if not bound_ok(len(chosen), v):
                return
            rec(v + 1, chosen + [v], blocked | neigh[v])

    rec(0, [], set())
    return set(best)


# ---------------------------------------------------------------------------
# Disjoint-neighborhood extraction on a bipartite graph


@dataclass(frozen=True)
class NeighborhoodOutcome:
    """Result of the bipartite dichotomy: a subset of A with pairwise
    disjoint B-neighborhoods, or a depth-1 clique-minor model grown from
    common neighbors."""

    kind: str  # "disjoint" | "minor"
    subset: frozenset[int] | None = None
    model: MinorModel | None = None


def disjoint_neighborhood_subset(
    h: Graph, side_a: set[int], side_b: set[int], target: int
) -> NeighborhoodOutcome:
    if side_a & side_b or (side_a | side_b) != set(range(h.n)):
        raise ValueError("side_a and side_b must partition the vertex set")
    for u, v in h.edges:
        if (u in side_a) == (v in side_a):
            raise ValueError(f"edge ({u},{v}) stays within one side; not a bipartition")
    if target < 1:
        raise ValueError("target must be positive")

    order = sorted(side_a, key=lambda v: (h.degree(v), v))
    chosen: list[int] = []
    used_b: set[int] = set()
    for u in order:
        nb = set(h.adjacency[u])
        if nb & used_b:
            continue
        chosen.append(u)
        used_b |= nb
    subset = frozenset(chosen)
    if len(subset) >= target:
        return NeighborhoodOutcome("disjoint", subset=subset)

    model = _common_neighbor_clique(h, order)
    if model is not None and model.pattern.n > len(subset):
        return NeighborhoodOutcome("minor", model=model)
    return NeighborhoodOutcome("disjoint", subset=subset)


def _common_neighbor_clique(h: Graph, order: list[int]) -> MinorModel | None:
    """Grow branch sets {u_m} + fresh shared neighbors, one A-vertex at a time."""
    picked: list[int] = []
    branch: list[set[int]] = []
    used_b: set[int] = set()
    for u in order:
        extras: set[int] = set()
        nb_u = set(h.adjacency[u])
        ok = True
        for um in picked:
            common = sorted((nb_u & set(h.adjacency[um])) - used_b - extras)
            if not common:
                ok = False
                break
            extras.add(common[0])
        if not ok:
            continue
        picked.append(u)
        branch.append({u} | extras)
        used_b |= extras
    if len(picked) < 2:
        return None
    model = MinorModel(
        host=h,
        pattern=make_clique(len(picked)),
        depth=1,
        branch_sets=tuple(frozenset(b) for b in branch),
        centers=tuple(picked),
    )
    assert verify_minor_model(model)
    return model


# ---------------------------------------------------------------------------
# The round-by-round wideness construction


@dataclass(frozen=True)
class RoundRecord:
    index: int
    removed: tuple[int, ...]  # per-round deletions, original ids
    x_size: int


@dataclass(frozen=True)
class WidenessCertificate:
    d: int
    S: frozenset[int]
    X: frozenset[int]
    W: frozenset[int]
    target: int
    met: bool
    rounds: tuple[RoundRecord, ...]


@dataclass(frozen=True)
class DensityWitness:
    model: MinorModel  # verified in original graph coordinates
    d: int
    round_index: int
    provenance: str  # "ball_adjacency_clique" | "r_loop_biclique" | "common_neighbor"


def validate_certificate(g: Graph, cert: WidenessCertificate) -> bool:
    if not cert.X <= cert.W - cert.S:
        return False
    deletion = delete_vertices(g, cert.S)
    mapped = [deletion.old_to_new[v] for v in cert.X]
    ok, _ = is_scattered(deletion.graph, mapped, cert.d)
    return ok


def uqw_construct(
    g: Graph,
    w: set[int],
    d: int,
    *,
    h: int | None = None,
    kappa_cap: int | None = None,
    target: int = 2,
) -> WidenessCertificate | DensityWitness:
    """Run the d-round wideness construction on target set w.

    h is the high-degree threshold of the removal loop, kappa_cap the
    per-round removal budget; both default to `target` (a biclique with
    `target` rows already certifies a K_target minor at depth 1).
    """
    w = set(w)
    for v in w:
        g._check_vertex(v)
    if target < 2:
        raise ValueError("target must be at least 2")
    if d < 0:
        raise ValueError("radius must be nonnegative")
    if h is None:
        h = target
    if kappa_cap is None:
        kappa_cap = target
    if h < 2:
        raise ValueError("high-degree threshold must be at least 2")
    if kappa_cap < 1:
        raise ValueError("kappa_cap must be positive")

    S: set[int] = set()
    X: list[int] = sorted(w)
    rounds: list[RoundRecord] = []
    for i in range(d):
        step = _run_round(g, S, X, i, h, kappa_cap, target)
        if isinstance(step, DensityWitness):
            return step
        removed, X = step
        S |= removed
        rounds.append(RoundRecord(index=i, removed=tuple(sorted(removed)), x_size=len(X)))
        deletion = delete_vertices(g, S)
        ok, pair = is_scattered(deletion.graph, [deletion.old_to_new[v] for v in X], i + 1)
        if not ok:
            raise AssertionError(f"round {i} produced a non-scattered set (pair {pair})")
    cert = WidenessCertificate(
        d=d,
        S=frozenset(S),
        X=frozenset(X),
        W=frozenset(w),
        target=target,
        met=len(X) >= target,
        rounds=tuple(rounds),
    )
    assert validate_certificate(g, cert)
    return cert


def _run_round(g, S, X, i, h, kappa_cap, target):
    deletion = delete_vertices(g, S)
    gp = deletion.graph
    to_new = deletion.old_to_new
    to_old = deletion.new_to_old
    xs = [to_new[v] for v in X]

    balls = {x: frozenset(ball_within(gp, x, i, range(gp.n))) for x in xs}
    owner = [-1] * gp.n
    for x in xs:
        for v in balls[x]:
            if owner[v] != -1:
                raise AssertionError("entering balls are not pairwise disjoint")
            owner[v] = x

    # adjacency between balls ("black" pairs)
    aux: dict[int, set[int]] = {x: set() for x in xs}
    for a, b in gp.edges:
        oa, ob = owner[a], owner[b]
        if oa != -1 and ob != -1 and oa != ob:
            aux[oa].add(ob)
            aux[ob].add(oa)

    clique_members = _greedy_clique(aux)
    if len(clique_members) >= kappa_cap:
        model = MinorModel(
            host=gp,
            pattern=make_clique(len(clique_members)),
            depth=i,
            branch_sets=tuple(balls[x] for x in clique_members),
            centers=tuple(clique_members),
        )
        return DensityWitness(
            model=_remap_model(model, to_old, g),
            d=i,
            round_index=i,
            provenance="ball_adjacency_clique",
        )

    candidates = [
        _scatter_greedy(gp, xs, i + 1),
        _greedy_independent(aux),
    ]
    best: tuple[set[int], set[int]] | None = None  # (Z old ids, removed old ids)
    witness: DensityWitness | None = None
    for xprime in candidates:
        result = _round_pipeline(g, gp, to_old, balls, xprime, i, h, kappa_cap, target)
        if isinstance(result, DensityWitness):
            if witness is None or result.model.pattern.n > witness.model.pattern.n:
                witness = result
            continue
        z_old, removed_old = result
        if best is None or len(z_old) > len(best[0]):
            best = (z_old, removed_old)
    if best is None:
        assert witness is not None
        return witness
    return best[1], sorted(best[0])


def _round_pipeline(g, gp, to_old, balls, xprime, i, h, kappa_cap, target):
    """Steps 3..6 of a round for one candidate selection X'."""
    in_ball = set()
    for x in xprime:
        in_ball |= balls[x]
    bside = [v for v in range(gp.n) if v not in in_ball]

    # bipartite contact graph: X' member ~ outside vertex touching its ball
    a_index = {x: j for j, x in enumerate(xprime)}
    b_index = {v: len(xprime) + j for j, v in enumerate(bside)}
    edges = set()
    for j, v in enumerate(bside):
        for u in gp.adjacency[v]:
            o = _ball_owner(balls, xprime, u)
            if o is not None:
                edges.add((a_index[o], b_index[v]))
    hn = len(xprime) + len(bside)
    hgraph = Graph.from_edges(hn, edges)

    inner = MinorModel(
        host=gp,
        pattern=hgraph,
        depth=i,
        branch_sets=tuple(balls[x] for x in xprime) + tuple(frozenset([v]) for v in bside),
        centers=tuple(xprime) + tuple(bside),
    )

    # removal loop: eat outside vertices that dominate many live rows
    y = set(range(len(xprime)))
    removed: list[int] = []
    live_b = set(b_index.values())
    while True:
        best_b, best_deg = None, -1
        for hb in sorted(live_b):
            deg = sum(1 for u in hgraph.adjacency[hb] if u in y)
            if deg > best_deg:
                best_b, best_deg = hb, deg
        if best_b is None or best_deg < h:
            break
        removed.append(best_b)
        live_b.discard(best_b)
        y &= set(hgraph.adjacency[best_b])
        if len(removed) > kappa_cap:
            k = min(len(removed), len(y))
            rows = sorted(removed)[:k]
            cols = sorted(y)[:k]
            outer = MinorModel(
                host=hgraph,
                pattern=make_clique(k),
                depth=1,
                branch_sets=tuple(frozenset({r, c}) for r, c in zip(rows, cols)),
                centers=tuple(cols),
            )
            model = compose_models(outer, inner)
            return DensityWitness(
                model=_remap_model(model, to_old, g),
                d=3 * i + 1,
                round_index=i,
                provenance="r_loop_biclique",
            )

    sub_vertices = sorted(y | live_b)
    keep = set(sub_vertices)
    sub = delete_vertices(hgraph, set(range(hn)) - keep)
    sub_a = {sub.old_to_new[v] for v in y}
    sub_b = {sub.old_to_new[v] for v in live_b}
    outcome = disjoint_neighborhood_subset(sub.graph, sub_a, sub_b, target)
    if outcome.kind == "minor":
        lifted = _remap_model(outcome.model, sub.new_to_old, hgraph)
        model = compose_models(lifted, inner)
        return DensityWitness(
            model=_remap_model(model, to_old, g),
            d=3 * i + 1,
            round_index=i,
            provenance="common_neighbor",
        )
    z_new = {xprime[sub.new_to_old[v]] for v in outcome.subset}
    z_old = {to_old[v] for v in z_new}
    removed_old = {to_old[bside[v - len(xprime)]] for v in removed}
    return z_old, removed_old


def _ball_owner(balls, xprime, u):
    for x in xprime:
        if u in balls[x]:
            return x
    return None


def _greedy_clique(aux: dict[int, set[int]]) -> list[int]:
    order = sorted(aux, key=lambda v: (-len(aux[v]), v))
    best: list[int] = []
    for seed in order:
        members = [seed]
        for v in order:
            if v != seed and all(v in aux[u] for u in members):
                members.append(v)
        if len(members) > len(best):
            best = members
    return sorted(best)


def _greedy_independent(aux: dict[int, set[int]]) -> list[int]:
    order = sorted(aux, key=lambda v: (len(aux[v]), v))
    chosen: list[int] = []
    taken: set[int] = set()
    for v in order:
        if v in taken:
            continue
        chosen.append(v)
        taken.add(v)
        taken |= aux[v]
    return sorted(chosen)


def _scatter_greedy(gp: Graph, xs: list[int], radius: int) -> list[int]:
    """Greedy subset of xs with pairwise distance > 2*radius in gp."""
    order = sorted(xs, key=lambda v: (gp.degree(v), v))
    chosen: list[int] = []
    blocked: set[int] = set()
    for v in order:
        if v in blocked:
            continue
        chosen.append(v)
        dist = gp.distances_from(v, cutoff=2 * radius)
        for u in xs:
            if u != v and 0 <= dist[u] <= 2 * radius:
                blocked.add(u)
    return sorted(chosen)


def _remap_model(model: MinorModel, to_old, new_host: Graph) -> MinorModel:
    """Push a model through an id remapping into the containing graph."""
    remapped = MinorModel(
        host=new_host,
        pattern=model.pattern,
        depth=model.depth,
        branch_sets=tuple(frozenset(to_old[v] for v in bs) for bs in model.branch_sets),
        centers=tuple(to_old[c] for c in model.centers),
    )
    check = verify_minor_model(remapped)
    if not check:
        raise AssertionError(f"remapped model invalid: {check.clause} {check.detail}")
    return remapped


# ---------------------------------------------------------------------------
# The subdivided-clique counterexample family


@dataclass(frozen=True)
class DeletionStats:
    deletions: int  # |S| examined at this level
    examined: int
    exhaustive: bool
    max_components: int
    max_component_diameter: int
    min_hub_scattered: int
    max_hub_scattered: int
    hubs_always_one_component: bool


@dataclass(frozen=True)
class CounterexampleReport:
    hubs: int
    subdivisions: int
    d: int
    s_cap: int
    applicable: bool  # the structural claims need subdivisions <= 2d
    graph: Graph
    levels: tuple[DeletionStats, ...]  # indexed by |S|


def qw_counterexample(
    m: int,
    t: int,
    d: int,
    s_cap: int = 2,
    sample_count: int = 200,
    seed: int = 0,
) -> CounterexampleReport:
    """Emit subdivided_clique(m, t) with a deletion-resilience analysis.

    For each deletion size up to s_cap, reports how many components
    survive, their largest diameter, and the extreme sizes of a maximum
    d-scattered subset of the hubs. Exhaustive for m <= 6, seeded
    sampling above.
    """
    g = subdivided_clique(m, t)
    applicable = t <= 2 * d
    hubs = list(range(m))
    exhaustive = m <= 6
    rng = random.Random(seed)

    levels = []
    for k in range(s_cap + 1):
        if exhaustive or k == 0:
            subsets = list(combinations(range(g.n), k))
            exh = True
        else:
            subsets = [
                tuple(sorted(rng.sample(range(g.n), k))) for _ in range(sample_count)
            ]
            exh = False
        max_comp = 0
        max_diam = 0
        min_sc: int | None = None
        max_sc = 0
        one_comp = True
        for s in subsets:
            deletion = delete_vertices(g, set(s))
            comps = _components(deletion.graph)
            max_comp = max(max_comp, len(comps))
            for comp in comps:
                max_diam = max(max_diam, _diameter(deletion.graph, comp))
            surviving = [deletion.old_to_new[hv] for hv in hubs if hv not in set(s)]
            if surviving:
                comp_of = {}
                for ci, comp in enumerate(comps):
                    for v in comp:
                        comp_of[v] = ci
                if len({comp_of[v] for v in surviving}) > 1:
                    one_comp = False
            sc = _max_scattered_subset(deletion.graph, surviving, d)
            min_sc = sc if min_sc is None else min(min_sc, sc)
            max_sc = max(max_sc, sc)
        levels.append(
            DeletionStats(
                deletions=k,
                examined=len(subsets),
                exhaustive=exh,
                max_components=max_comp,
                max_component_diameter=max_diam,
                min_hub_scattered=min_sc or 0,
                max_hub_scattered=max_sc,
                hubs_always_one_component=one_comp,
            )
        )
    return CounterexampleReport(
        hubs=m,
        subdivisions=t,
        d=d,
        s_cap=s_cap,
        applicable=applicable,
        graph=g,
        levels=tuple(levels),
    )


def _components(g: Graph) -> list[list[int]]:
    seen: set[int] = set()
    comps = []
    for v in range(g.n):
        if v in seen:
            continue
        dist = g.distances_from(v)
        comp = [u for u in range(g.n) if dist[u] >= 0]
        seen.update(comp)
        comps.append(comp)
    return comps


def _diameter(g: Graph, comp: list[int]) -> int:
    best = 0
    for v in comp:
        dist = g.distances_from(v)
        best = max(best, max(int(dist[u]) for u in comp))
    return best


def _max_scattered_subset(g: Graph, vertices: list[int], d: int) -> int:
    """Largest d-scattered subset of `vertices`; exact up to 12, else greedy."""
    if not vertices:
        return 0
    dist = {v: g.distances_from(v, cutoff=2 * d) for v in vertices}

    def compatible(u, v):
        x = dist[u][v]
        return x < 0 or x > 2 * d

    if len(vertices) <= 12:
        best = 1
        for size in range(len(vertices), 0, -1):
            if size <= best:
                break
            for sub in combinations(vertices, size):
                if all(compatible(a, b) for a, b in combinations(sub, 2)):
                    best = max(best, size)
                    break
        return best
    chosen: list[int] = []
    for v in sorted(vertices, key=lambda v: (g.degree(v), v)):
        if all(compatible(v, u) for u in chosen):
            chosen.append(v)
    return len(chosen)


# ---------------------------------------------------------------------------
# JSON forms


def outcome_to_json(obj: WidenessCertificate | DensityWitness) -> dict:
    if isinstance(obj, WidenessCertificate):
        return {
            "kind": "certificate",
            "d": obj.d,
            "S": sorted(obj.S),
            "X": sorted(obj.X),
            "W": sorted(obj.W),
            "target": obj.target,
            "met": obj.met,
            "rounds": [
                {"R": list(r.removed), "X_size": r.x_size} for r in obj.rounds
            ],
        }
    return {
        "kind": "witness",
        "d": obj.d,
        "round": obj.round_index,
        "provenance": obj.provenance,
        "model": model_to_json(obj.model),
    }


def outcome_from_json(g: Graph, data: dict) -> WidenessCertificate | DensityWitness:
    if data["kind"] == "certificate":
        return WidenessCertificate(
            d=int(data["d"]),
            S=frozenset(data["S"]),
            X=frozenset(data["X"]),
            W=frozenset(data["W"]),
            target=int(data["target"]),
            met=bool(data["met"]),
            rounds=tuple(
                RoundRecord(index=i, removed=tuple(r["R"]), x_size=int(r["X_size"]))
                for i, r in enumerate(data["rounds"])
            ),
        )
    if data["kind"] == "witness":
        model = model_from_json(g, data["model"])
        assert isinstance(model, MinorModel)
        return DensityWitness(
            model=model,
            d=int(data["d"]),
            round_index=int(data["round"]),
            provenance=str(data["provenance"]),
        )
    raise ValueError(f"unknown outcome kind {data['kind']!r}")
