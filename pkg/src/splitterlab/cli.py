"""Command-line surface.

Exit codes: 0 found/valid/win-as-queried, 1 not-found/invalid,
2 usage error, 3 budget-truncated.
"""

from __future__ import annotations

import json
import sys

import click

from . import edgelist
from .analyze import analyze as run_analyze
from .analyze import greedy_ball_connector, render
from .families import KINDS, FamilySpec, generate
from .graph import Graph
from .minors import model_to_json
from .minorsearch import SearchStatus, find_shallow_minor, find_topo_minor
from .splitter import (
    CONNECTOR,
    RESIGN,
    SPLITTER,
    GameConfig,
    IllegalMove,
    apply_splitter,
    new_game,
    propose_connector,
    solve_game,
    splitter_strategy_path_union,
)
from .wideness import (
    EXACT_SOLVER_MAX,
    WidenessCertificate,
    _scatter_greedy,
    max_scattered_exact,
    outcome_to_json,
    uqw_construct,
)

EXIT_OK = 0
EXIT_NOT_FOUND = 1
EXIT_USAGE = 2
EXIT_TRUNCATED = 3


def _load_graph(path: str) -> Graph:
    try:
        return edgelist.load(path)
    except (OSError, edgelist.EdgeListError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_NOT_FOUND)


def _parse_pattern(text: str) -> Graph:
    try:
        kind, _, params = text.partition(":")
        spec = FamilySpec(kind, tuple(int(p) for p in params.split(",") if p))
        return generate(spec)
    except ValueError as exc:
        raise click.UsageError(f"bad --pattern {text!r}: {exc}") from exc


@click.group()
def main():
    """Structural sparsity toolkit and splitter-game engine."""


@main.command("generate")
@click.option("--family", "kind", required=True, type=click.Choice(KINDS))
@click.option("--params", required=True, help="comma-separated integers, e.g. 4,1")
@click.option("-o", "--output", type=click.Path(writable=True), default=None)
def generate_cmd(kind, params, output):
    """Write a family member as an edge-list file."""
    try:
        spec = FamilySpec(kind, tuple(int(p) for p in params.split(",") if p))
        g = generate(spec)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    text = edgelist.dumps(g, comment=f"{kind}({params})")
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _minor_command(finder, name):
    @main.command(name)
    @click.option("--pattern", required=True, help="family spec, e.g. clique:4")
    @click.option("--depth", "-d", "depth", required=True, type=int)
    @click.option("--budget", type=int, default=None, help="search-node cap")
    @click.option("--cert-out", type=click.Path(writable=True), default=None)
    @click.argument("file", type=click.Path(exists=True))
    def cmd(pattern, depth, budget, cert_out, file):
        g = _load_graph(file)
        h = _parse_pattern(pattern)
        try:
            result = finder(g, h, depth, budget=budget)
        except ValueError as exc:
            raise click.UsageError(str(exc)) from exc
        if result.status is SearchStatus.FOUND:
            payload = json.dumps(model_to_json(result.model), indent=2, sort_keys=True)
            if cert_out:
                with open(cert_out, "w") as fh:
                    fh.write(payload + "\n")
            click.echo(payload)
            sys.exit(EXIT_OK)
        elif result.status is SearchStatus.ABSENT:
            click.echo(f"absent (explored {result.explored} nodes)")
            sys.exit(EXIT_NOT_FOUND)
        else:
            click.echo(f"unknown: budget exhausted after {result.explored} nodes")
            sys.exit(EXIT_TRUNCATED)

    cmd.__name__ = name.replace("-", "_")
    return cmd


_minor_command(find_shallow_minor, "minor")
_minor_command(find_topo_minor, "topo-minor")


@main.command("scatter")
@click.option("--d", "d", required=True, type=int)
@click.option("--exact", is_flag=True, help="force the exact solver (guarded)")
@click.option("--cap", type=int, default=None, help="stop once a set of this size is found")
@click.argument("file", type=click.Path(exists=True))
def scatter_cmd(d, exact, cap, file):
    """Maximum (exact) or greedy d-scattered set."""
    g = _load_graph(file)
    if exact or g.n <= EXACT_SOLVER_MAX:
        try:
            best = max_scattered_exact(g, d, size_cap=cap)
            mode = "exact"
        except ValueError as exc:
            raise click.UsageError(str(exc)) from exc
    else:
        best = set(_scatter_greedy(g, list(range(g.n)), d))
        mode = "greedy"
    click.echo(json.dumps({"mode": mode, "size": len(best), "set": sorted(best)}))
    sys.exit(EXIT_OK)


@main.command("wideness")
@click.option("--d", "d", required=True, type=int)
@click.option("--target", required=True, type=int)
@click.option("--h", "h", type=int, default=None, help="high-degree threshold")
@click.option("--kappa-cap", type=int, default=None, help="per-round removal cap")
@click.option("--target-set", type=click.Path(exists=True), default=None,
              help="file with one vertex id per line; default all vertices")
@click.argument("file", type=click.Path(exists=True))
def wideness_cmd(d, target, h, kappa_cap, target_set, file):
    """Run the wideness construction; exit 0 only on a met certificate."""
    g = _load_graph(file)
    if target_set:
        with open(target_set) as fh:
            w = {int(line) for line in fh if line.strip() and not line.startswith("#")}
    else:
        w = set(range(g.n))
    try:
        outcome = uqw_construct(g, w, d, h=h, kappa_cap=kappa_cap, target=target)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    click.echo(json.dumps(outcome_to_json(outcome), indent=2, sort_keys=True))
    met = isinstance(outcome, WidenessCertificate) and outcome.met
    sys.exit(EXIT_OK if met else EXIT_NOT_FOUND)


@main.group("game")
def game_group():
    """Splitter-game solving and interactive play."""


@game_group.command("solve")
@click.option("--d", "d", required=True, type=int)
@click.option("--rounds", "-l", "ell", required=True, type=int)
@click.option("--show-table", is_flag=True)
@click.argument("file", type=click.Path(exists=True))
def game_solve_cmd(d, ell, show_table, file):
    """Exact m=1 game value; exit 0 iff splitter wins within the round limit."""
    g = _load_graph(file)
    try:
        solution = solve_game(g, GameConfig(d=d, ell=ell, m=1))
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    payload = {"winner": solution.winner, "optimal_rounds": solution.optimal_rounds}
    if show_table:
        payload["table"] = {
            ",".join(map(str, sorted(k))): {
                "rounds": v["rounds"],
                "connector": v["connector"],
                "splitter": {str(a): b for a, b in v["splitter"].items()},
            }
            for k, v in solution.solver.table().items()
        }
    click.echo(json.dumps(payload, indent=2, sort_keys=True))
    sys.exit(EXIT_OK if solution.winner == SPLITTER else EXIT_NOT_FOUND)


@game_group.command("play")
@click.option("--d", "d", required=True, type=int)
@click.option("--as", "side", type=click.Choice([CONNECTOR, SPLITTER]), default=CONNECTOR)
@click.option("--rounds", "ell", type=int, default=None)
@click.option("--m", "m", type=int, default=None)
@click.option("--engine", default=None,
              help="opponent: path_union|solver (vs connector), greedy|hub|solver (vs splitter)")
@click.option("--hubs", default=None, help="comma-separated hub ids for the hub engine")
@click.argument("file", type=click.Path(exists=True))
def game_play_cmd(d, side, ell, m, engine, hubs, file):
    """Text-mode interactive play against an engine strategy."""
    g = _load_graph(file)
    config = GameConfig(d=d, ell=ell, m=m)
    state = new_game(g, config)
    hub_list = [int(x) for x in hubs.split(",")] if hubs else None
    if engine is None:
        engine = "path_union" if side == CONNECTOR else "greedy"

    def engine_splitter(st):
        if engine == "solver":
            return solve_game(g, GameConfig(d=d, ell=ell, m=1)).solver.splitter_reply(
                st.arena, st.pending_v
            )
        return splitter_strategy_path_union(st)

    def engine_connector(st):
        if engine == "solver":
            return solve_game(g, GameConfig(d=d, ell=ell, m=1)).solver.connector_move(st.arena)
        if engine == "hub":
            for hv in sorted(hub_list or []):
                if hv in st.arena:
                    return hv
            return RESIGN
        return greedy_ball_connector(st)

    click.echo(f"arena: {sorted(state.arena)}")
    while state.winner is None:
        if side == CONNECTOR:
            v = click.prompt("your vertex", type=int)
            try:
                state = propose_connector(state, v)
            except IllegalMove as exc:
                click.echo(f"rejected: {exc.rule}")
                continue
            w = frozenset(engine_splitter(state))
            state = apply_splitter(state, w)
            click.echo(f"splitter removes {sorted(w)}; arena: {sorted(state.arena)}")
        else:
            mv = engine_connector(state)
            if mv is RESIGN:
                click.echo("connector resigns")
                sys.exit(EXIT_OK)
            state = propose_connector(state, mv)
            click.echo(f"connector picks {mv}")
            while True:
                raw = click.prompt("your removal set (comma-separated, empty ok)", default="")
                try:
                    w = frozenset(int(x) for x in raw.split(",") if x.strip())
                    state = apply_splitter(state, w)
                    break
                except (ValueError, IllegalMove) as exc:
                    click.echo(f"rejected: {getattr(exc, 'rule', exc)}")
            click.echo(f"arena: {sorted(state.arena)}")
    click.echo(f"winner: {state.winner} after {state.rounds_played} rounds")
    sys.exit(EXIT_OK)


@main.command("analyze")
@click.option("--family", "kind", required=True, type=click.Choice(KINDS))
@click.option("--n-range", required=True, help="A:B:STEP (inclusive endpoints)")
@click.option("--depths", required=True, help="comma-separated, e.g. 1,2,3")
@click.option("--params", "extra", default="", help="extra fixed family params after n")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv")
@click.option("--m-max", type=int, default=8)
@click.option("--budget", type=int, default=2_000_000)
@click.option("--uqw-target", type=int, default=4)
@click.option("-o", "--output", type=click.Path(writable=True), default=None)
def analyze_cmd(kind, n_range, depths, extra, fmt, m_max, budget, uqw_target, output):
    """Sweep a family and tabulate sparsity indicators per (n, d)."""
    try:
        parts = [int(x) for x in n_range.split(":")]
        if len(parts) == 2:
            parts.append(1)
        lo, hi, step = parts
        ns = list(range(lo, hi + 1, step))
        ds = [int(x) for x in depths.split(",")]
        extra_params = tuple(int(x) for x in extra.split(",") if x.strip())
    except ValueError as exc:
        raise click.UsageError(f"bad range/depths: {exc}") from exc
    try:
        profile = run_analyze(
            kind, ns, ds, extra_params, m_max=m_max, budget=budget, uqw_target=uqw_target
        )
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    data = render(profile, fmt)
    if output:
        with open(output, "wb") as fh:
            fh.write(data)
    else:
        click.echo(data.decode(), nl=False)
    sys.exit(EXIT_TRUNCATED if profile.truncated else EXIT_OK)


@main.command("serve")
@click.option("--port", "-p", type=int, default=8000)
@click.option("--host", default="127.0.0.1")
@click.option("--state", "state_file", type=click.Path(), default=None)
@click.option("--static-dir", type=click.Path(), default=None)
def serve_cmd(port, host, state_file, static_dir):
    """Run the interactive game service (HTTP + JSON, UI at /)."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(state_file, static_dir), host=host, port=port)


if __name__ == "__main__":
    main()
