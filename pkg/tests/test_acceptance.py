"""Acceptance suite: one test per criterion, one pass line per criterion.

Everything here is property- or oracle-based at desk scale; expected
values marked as derived were computed with the enumeration oracles in
splitterlab.oracle (or the definitional brute force inlined below) and
then frozen.
"""

import itertools
import json
import random
import time

from click.testing import CliRunner

from splitterlab import edgelist, oracle
from splitterlab.analyze import analyze, render
from splitterlab.cli import main as cli_main
from splitterlab.families import clique, cycle, grid, star, subdivided_clique
from splitterlab.graph import ball_within, is_scattered
from splitterlab.minors import (
    compose_models,
    composed_depth,
    model_from_json,
    model_to_json,
    verify_minor_model,
)
from splitterlab.minorsearch import SearchStatus, find_shallow_minor
from splitterlab.splitter import (
    RESIGN,
    SPLITTER,
    GameConfig,
    apply_splitter,
    connector_strategy_hub,
    new_game,
    play_match,
    propose_connector,
    solve_game,
    splitter_strategy_path_union,
    trace_from_json,
    trace_to_json,
    transform_one_move,
    verify_trace,
)
from splitterlab.wideness import (
    DensityWitness,
    WidenessCertificate,
    max_scattered_exact,
    outcome_from_json,
    outcome_to_json,
    uqw_construct,
    validate_certificate,
)

from conftest import connected_corpus, grow_random_model, random_graph, seeded_corpus


def report(num: int, text: str) -> None:
    print(f"[acceptance] criterion {num}: PASS - {text}")


def test_criterion_1_minor_search_oracle_equivalence():
    started = time.time()
    graphs = seeded_corpus(101, 200, 2, 8)
    mismatches = 0
    for g in graphs:
        for m in (2, 3, 4):
            for d in (0, 1, 2):
                res = find_shallow_minor(g, clique(m), d, budget=None)
                assert res.status is not SearchStatus.UNKNOWN, "no truncation at this scale"
                if (res.status is SearchStatus.FOUND) != oracle.shallow_minor_present(
                    g, clique(m), d
                ):
                    mismatches += 1
                if res.status is SearchStatus.FOUND:
                    assert verify_minor_model(res.model).ok
    elapsed = time.time() - started
    assert mismatches == 0
    assert elapsed < 300, f"runtime {elapsed:.1f}s exceeds 5 minutes"
    report(1, f"200 graphs x 9 configurations, 0 mismatches in {elapsed:.1f}s")


def test_criterion_2_composition_law():
    rng = random.Random(202)
    failures = 0
    checked = 0
    while checked < 100:
        host = random_graph(rng, rng.randint(4, 12), 0.45)
        r, s = rng.randint(0, 2), rng.randint(0, 2)
        inner = grow_random_model(rng, host, rng.randint(2, min(4, host.n)), r)
        if inner is None or inner.pattern.n < 1:
            continue
        outer = grow_random_model(rng, inner.pattern, rng.randint(1, min(3, inner.pattern.n)), s)
        if outer is None:
            continue
        composed = compose_models(outer, inner)
        if composed.depth != composed_depth(r, s) or not verify_minor_model(composed).ok:
            failures += 1
        checked += 1
    assert failures == 0
    report(2, "100 nested pairs compose to valid models at depth exactly 2rs+r+s")


def test_criterion_3_scattered_set_exactness():
    mismatches = 0
    for g in seeded_corpus(303, 60, 1, 10):
        for d in (1, 2):
            exact = max_scattered_exact(g, d)
            brute = oracle.max_scattered_brute(g, d)
            if len(exact) != len(brute) or not is_scattered(g, exact, d)[0]:
                mismatches += 1
    # cycle(12), d=1: brute force over all subsets gives size 4
    got = max_scattered_exact(cycle(12), 1)
    assert len(got) == 4 == len(oracle.max_scattered_brute(cycle(12), 1))
    assert mismatches == 0
    report(3, "exact solver matches definitional brute force on 60 graphs + cycle(12)")


def test_criterion_4_uqw_soundness():
    rng = random.Random(404)
    pool = seeded_corpus(405, 120, 3, 14, ps=(0.15, 0.3, 0.5, 0.7))
    pool += [cycle(n) for n in (6, 9, 12, 18, 24)]
    pool += [grid(3, 3), grid(3, 5), grid(4, 4), star(8), star(15)]
    pool += [clique(n) for n in (5, 8, 10)]
    pool += [subdivided_clique(4, 1), subdivided_clique(5, 2)]
    checked = 0
    while checked < 500:
        g = pool[rng.randrange(len(pool))]
        w = {v for v in range(g.n) if rng.random() < 0.85}
        if len(w) < 2:
            continue
        d = rng.randint(0, 3)
        out = uqw_construct(g, w, d, target=rng.randint(2, 6))
        if isinstance(out, WidenessCertificate):
            assert validate_certificate(g, out)
        else:
            assert verify_minor_model(out.model).ok
            assert out.model.depth <= 3 * d + 1
        checked += 1

    for g, d, t in [
        (star(12), 3, 12),
        (cycle(18), 1, 6),
        (cycle(24), 3, 3),
        (grid(4, 4), 1, 4),
        (grid(5, 5), 2, 3),
    ]:
        out = uqw_construct(g, set(range(g.n)), d, target=t)
        assert isinstance(out, WidenessCertificate), f"sparse fixture produced a witness ({g})"

    for n in (8, 10, 12):
        out = uqw_construct(clique(n), set(range(n)), 1, h=3, target=3)
        assert isinstance(out, DensityWitness)
        assert verify_minor_model(out.model).ok
    report(4, "500 fuzz inputs sound; sparse fixtures certify, cliques witness")


def test_criterion_5_splitter_clique_law():
    started = time.time()
    for n in range(1, 7):
        for ell in range(1, 8):
            sol = solve_game(clique(n), GameConfig(d=1, ell=ell, m=1))
            assert (sol.winner == SPLITTER) == (ell >= n), f"K_{n} at ell={ell}"
    elapsed = time.time() - started
    assert elapsed < 120
    report(5, f"splitter wins (ell,1,1) on K_n iff ell >= n, n <= 6, in {elapsed:.1f}s")


def test_criterion_6_strategy_vs_solver_consistency():
    graphs = connected_corpus(606, 100, 2, 7)
    for g in graphs:
        sol = solve_game(g, GameConfig(d=1, ell=g.n, m=1))
        assert sol.winner == SPLITTER  # removing the pick shrinks the arena every round
        trace = play_match(
            g,
            GameConfig(d=1),
            splitter_strategy_path_union,
            sol.connector_strategy(),
            round_cap=g.n,
        )
        assert trace.winner == SPLITTER and len(trace.moves) <= g.n
        assert verify_trace(g, trace)

    # hub connector on subdivided_clique(4,1), d=3, m=1: every singleton
    # splitter line still allows four connector moves
    g = subdivided_clique(4, 1)
    hubs = range(4)

    def min_connector_moves(state, made):
        mv = connector_strategy_hub(state, hubs)
        if mv is RESIGN or state.winner is not None:
            return made
        st = propose_connector(state, mv)
        best = None
        for u in sorted(st.arena):
            nxt = apply_splitter(st, {u})
            got = made + 1 if nxt.winner == SPLITTER else min_connector_moves(nxt, made + 1)
            if best is None or got < best:
                best = got
        return best if best is not None else made + 1

    survived = min_connector_moves(new_game(g, GameConfig(d=3, m=1)), 0)
    assert survived >= 4
    report(6, f"path-union beats optimal connectors on 100 graphs; hub survives {survived} rounds")


def _set_game_splitter_wins(g, d, ell, m):
    def wins(arena, rounds_left):
        if not arena:
            return True
        if rounds_left == 0:
            return False
        for v in sorted(arena):
            bm = frozenset(ball_within(g, v, d, arena))
            if not any(
                wins(bm - set(w), rounds_left - 1)
                for size in range(0, m + 1)
                for w in itertools.combinations(sorted(bm), size)
            ):
                return False
        return True

    return wins(frozenset(range(g.n)), ell)


class _OptimalSetSplitter:
    """(ell, m, d) splitter via bounded search, one consultation per virtual round."""

    def __init__(self, g, d, ell, m):
        self.g, self.d, self.ell, self.m = g, d, ell, m
        self.consulted = 0

    def __call__(self, state):
        rounds_left = max(1, self.ell - self.consulted)
        self.consulted += 1
        arena = frozenset(state.arena)
        bm = frozenset(ball_within(self.g, state.pending_v, self.d, arena))

        def wins(a, r):
            if not a:
                return True
            if r == 0:
                return False
            for vv in sorted(a):
                bb = frozenset(ball_within(self.g, vv, self.d, a))
                if not any(
                    wins(bb - set(w), r - 1)
                    for size in range(0, self.m + 1)
                    for w in itertools.combinations(sorted(bb), size)
                ):
                    return False
            return True

        for size in range(0, self.m + 1):
            for w in itertools.combinations(sorted(bm), size):
                if wins(bm - set(w), rounds_left - 1):
                    return set(w)
        return set()


def test_criterion_7_one_move_transform():
    winnable = 0
    failures = 0
    for g in connected_corpus(707, 40, 2, 7):
        if not _set_game_splitter_wins(g, 1, 2, 2):
            continue
        winnable += 1

        def explore(prefix):
            state = new_game(g, GameConfig(d=1, m=1))
            strategy = transform_one_move(_OptimalSetSplitter(g, 1, 2, 2))
            for v in prefix:
                state = propose_connector(state, v)
                state = apply_splitter(state, strategy(state))
                if state.winner == SPLITTER:
                    return True
            if state.rounds_played >= 4:
                return False
            return all(explore(prefix + [v]) for v in sorted(state.arena))

        if not explore([]):
            failures += 1
    assert winnable >= 10, "corpus must contain (2,2,1)-winnable graphs"
    assert failures == 0
    report(7, f"transformed strategy wins (4,1,1) on all {winnable} (2,2,1)-winnable graphs")


def test_criterion_8_analyzer_trend_fixtures():
    cyc = analyze("cycle", [8, 16, 24, 32, 40], [1, 2, 3])
    assert not cyc.truncated
    assert all(r.omega_d <= 3 for r in cyc.rows)

    clq = analyze("clique", list(range(2, 9)), [1])
    assert all(r.omega_d == r.n for r in clq.rows)

    # byte-identical across two runs, both formats
    assert render(cyc, "csv") == render(analyze("cycle", [8, 16, 24, 32, 40], [1, 2, 3]), "csv")
    assert render(clq, "json") == render(analyze("clique", list(range(2, 9)), [1]), "json")
    report(8, "cycle sweep bounded by omega=3, clique sweep grows, outputs byte-identical")


def test_criterion_9_formats_and_exit_codes(tmp_path):
    # edge-list round trips over the fixture corpus
    rng = random.Random(909)
    fixtures = [cycle(7), grid(3, 4), subdivided_clique(4, 2), star(6), clique(5)]
    fixtures += [random_graph(rng, rng.randint(1, 20), 0.3) for _ in range(25)]
    for i, g in enumerate(fixtures):
        p = tmp_path / f"f{i}.edges"
        edgelist.dump(g, p)
        assert edgelist.load(p) == g

    # certificate JSON round trips
    r = find_shallow_minor(cycle(9), clique(3), 1)
    blob = json.dumps(model_to_json(r.model), sort_keys=True)
    back = model_from_json(cycle(9), json.loads(blob))
    assert json.dumps(model_to_json(back), sort_keys=True) == blob

    out = uqw_construct(cycle(24), set(range(24)), 1, target=8)
    blob = json.dumps(outcome_to_json(out), sort_keys=True)
    assert json.dumps(outcome_to_json(outcome_from_json(cycle(24), json.loads(blob))), sort_keys=True) == blob

    trace = play_match(
        subdivided_clique(4, 1),
        GameConfig(d=3),
        splitter_strategy_path_union,
        lambda st: min(st.arena),
    )
    blob = json.dumps(trace_to_json(trace), sort_keys=True)
    assert json.dumps(trace_to_json(trace_from_json(json.loads(blob))), sort_keys=True) == blob

    # CLI exit code table: 0 found, 1 not found/invalid, 2 usage, 3 truncated
    runner = CliRunner()
    c9 = tmp_path / "c9.edges"
    edgelist.dump(cycle(9), c9)
    c10 = tmp_path / "c10.edges"
    edgelist.dump(cycle(10), c10)
    bad = tmp_path / "bad.edges"
    bad.write_text("2 1\n0 0\n")

    assert runner.invoke(cli_main, ["minor", "--pattern", "clique:3", "--depth", "1", str(c9)]).exit_code == 0
    assert runner.invoke(cli_main, ["minor", "--pattern", "clique:3", "--depth", "1", str(c10)]).exit_code == 1
    assert runner.invoke(cli_main, ["minor", "--pattern", "clique:3", "--depth", "1", str(bad)]).exit_code == 1
    assert runner.invoke(cli_main, ["minor", "--pattern", "clique:99", "--depth", "1", str(c9)]).exit_code == 2
    assert (
        runner.invoke(
            cli_main, ["minor", "--pattern", "clique:3", "--depth", "2", str(c10), "--budget", "2"]
        ).exit_code
        == 3
    )
    assert runner.invoke(cli_main, ["game", "solve", "--d", "1", "--rounds", "4", str(_k4(tmp_path))]).exit_code == 0
    assert runner.invoke(cli_main, ["game", "solve", "--d", "1", "--rounds", "3", str(_k4(tmp_path))]).exit_code == 1
    report(9, "edge-list and JSON schemas round-trip; CLI exit codes conform")


def _k4(tmp_path):
    p = tmp_path / "k4.edges"
    edgelist.dump(clique(4), p)
    return p
