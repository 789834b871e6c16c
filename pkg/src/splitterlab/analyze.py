"""Parametric family sweeps: sparsity indicators tabulated per (n, d).

Each row juxtaposes the clique-minor profile, the largest scattered set
(exact at small scale, construction-achieved above), the wideness
outcome, and the splitter-game round count of the path-union strategy
against a greedy adversarial connector.
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass

from .families import FamilySpec, generate
from .graph import Graph, ball_within
from .minorsearch import clique_profile
from .splitter import (
    GameConfig,
    play_match,
    splitter_strategy_path_union,
)
from .wideness import (
    EXACT_SOLVER_MAX,
    WidenessCertificate,
    _scatter_greedy,
    max_scattered_exact,
    uqw_construct,
    validate_certificate,
)

CSV_COLUMNS = (
    "family",
    "n",
    "d",
    "omega_d",
    "omega_truncated",
    "max_scattered",
    "uqw_outcome",
    "splitter_rounds",
)


@dataclass(frozen=True)
class ProfileRow:
    family: str
    n: int
    d: int
    omega_d: int
    omega_truncated: bool
    max_scattered: int
    uqw_outcome: str
    splitter_rounds: int


@dataclass(frozen=True)
class FamilyProfile:
    family: str
    rows: tuple[ProfileRow, ...]
    meta: dict

    @property
    def truncated(self) -> bool:
        return any(r.omega_truncated for r in self.rows)


def greedy_ball_connector(state):
    """Adversarial heuristic: the arena vertex with the largest ball inside it."""
    best = None
    for v in sorted(state.arena):
        size = len(ball_within(state.graph, v, state.config.d, state.arena))
        if best is None or size > best[0]:
            best = (size, v)
    return best[1]


def analyze(
    kind: str,
    ns: list[int],
    depths: list[int],
    extra: tuple[int, ...] = (),
    *,
    m_max: int = 8,
    budget: int | None = 2_000_000,
    uqw_target: int = 4,
) -> FamilyProfile:
    """Sweep family members family(n, *extra) over n in ns, d in depths.

    max_scattered is exact up to the solver guard, then falls back to
    the construction's achieved set (greedy direct bound on a witness).
    Budget truncation is flagged per cell, never silently wrong.
    """
    if not ns or not depths:
        raise ValueError("n range and depth list must be nonempty")
    depths = sorted(set(depths))
    started = time.time()
    rows: list[ProfileRow] = []
    for n in ns:
        g = generate(_member_spec(kind, n, extra))
        profile = clique_profile(g, max(depths), m_max=min(m_max, 8), budget=budget)
        for d in depths:
            rows.append(_cell(kind, n, d, g, profile, uqw_target))
    meta = {
        "kind": kind,
        "extra": list(extra),
        "ns": list(ns),
        "depths": list(depths),
        "m_max": m_max,
        "budget": budget,
        "uqw_target": uqw_target,
        "elapsed_s": round(time.time() - started, 3),
    }
    return FamilyProfile(family=kind, rows=tuple(rows), meta=meta)


def _member_spec(kind: str, n: int, extra: tuple[int, ...]) -> FamilySpec:
    """n fills the leading size parameter; grid sweeps squares by default."""
    if kind == "grid" and not extra:
        return FamilySpec(kind, (n, n))
    return FamilySpec(kind, (n, *extra))


def _cell(kind, n, d, g: Graph, profile, uqw_target) -> ProfileRow:
    outcome = uqw_construct(g, set(range(g.n)), d, target=uqw_target)
    if isinstance(outcome, WidenessCertificate):
        assert validate_certificate(g, outcome)
        uqw_tag = "certificate" if outcome.met else "target_unmet"
        achieved = len(outcome.X)
    else:
        uqw_tag = "witness"
        achieved = len(_scatter_greedy(g, list(range(g.n)), d))
    if g.n <= EXACT_SOLVER_MAX:
        scattered = len(max_scattered_exact(g, d))
    else:
        scattered = achieved

    trace = play_match(
        g,
        GameConfig(d=d),
        splitter_strategy_path_union,
        greedy_ball_connector,
        round_cap=g.n,
    )
    return ProfileRow(
        family=kind,
        n=n,
        d=d,
        omega_d=profile.omega(d),
        omega_truncated=profile.truncated[d],
        max_scattered=scattered,
        uqw_outcome=uqw_tag,
        splitter_rounds=len(trace.moves),
    )


def render(profile: FamilyProfile, fmt: str) -> bytes:
    """Stable byte rendering; rows ordered n-major, d-minor."""
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for r in profile.rows:
            writer.writerow(
                [
                    r.family,
                    r.n,
                    r.d,
                    r.omega_d,
                    "true" if r.omega_truncated else "false",
                    r.max_scattered,
                    r.uqw_outcome,
                    r.splitter_rounds,
                ]
            )
        return buf.getvalue().encode()
    if fmt == "json":
        payload = {
            "family": profile.family,
            "rows": [
                {
                    "family": r.family,
                    "n": r.n,
                    "d": r.d,
                    "omega_d": r.omega_d,
                    "omega_truncated": r.omega_truncated,
                    "max_scattered": r.max_scattered,
                    "uqw_outcome": r.uqw_outcome,
                    "splitter_rounds": r.splitter_rounds,
                }
                for r in profile.rows
            ],
        }
        return (json.dumps(payload, indent=2, sort_keys=True) + "\n").encode()
    raise ValueError(f"unknown format {fmt!r}; expected csv or json")


def parse_rendered(data: bytes) -> FamilyProfile:
    """Inverse of render for the JSON form (round-trip property)."""
    payload = json.loads(data.decode())
    rows = tuple(
        ProfileRow(
            family=r["family"],
            n=int(r["n"]),
            d=int(r["d"]),
            omega_d=int(r["omega_d"]),
            omega_truncated=bool(r["omega_truncated"]),
            max_scattered=int(r["max_scattered"]),
            uqw_outcome=r["uqw_outcome"],
            splitter_rounds=int(r["splitter_rounds"]),
        )
        for r in payload["rows"]
    )
    return FamilyProfile(family=payload["family"], rows=rows, meta={})
