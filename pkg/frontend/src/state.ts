// Board view-model derivation. Every status comes from the server's
// session view; nothing here re-implements game rules.

import type { SessionView, VertexStatus } from "./types.js";

export interface BoardViewModel {
  statuses: VertexStatus[];
  overlay: Set<number>; // hover preview ball, server-computed
  selection: Set<number>; // splitter set being assembled
  pendingV: number | null;
}

/** Arena membership and removals straight from the session view.
 *
 * A vertex is in-arena (hubs highlighted), removed-by-splitter if some
 * recorded move's W contains it, and outside-ball otherwise (trimmed
 * away by an arena update without being picked by the splitter).
 */
export function deriveStatuses(
  session: SessionView,
  upToRound: number | null = null,
): VertexStatus[] {
  const rounds = upToRound === null ? session.moves.length : upToRound;
  const arena = new Set(session.arenas[rounds]);
  const removed = new Set<number>();
  for (const move of session.moves.slice(0, rounds)) {
    for (const w of move.W) removed.add(w);
  }
  const hubs = new Set(session.hubs ?? []);
  const statuses: VertexStatus[] = [];
  for (let v = 0; v < session.graph.n; v++) {
    if (arena.has(v)) {
      statuses.push(hubs.has(v) ? "hub-highlight" : "in-arena");
    } else if (removed.has(v)) {
      statuses.push("removed-by-splitter");
    } else {
      statuses.push("outside-ball");
    }
  }
  return statuses;
}

/** Toggle a vertex in the splitter's staged set, honoring the budget. */
export function toggleSelection(
  selection: Set<number>,
  v: number,
  budget: number | null,
): Set<number> {
  const next = new Set(selection);
  if (next.has(v)) {
    next.delete(v);
  } else if (budget === null || next.size < budget) {
    next.add(v);
  }
  return next;
}

export function describeOutcome(session: SessionView): string {
  if (session.status !== "finished") return "";
  const rounds = session.moves.length;
  const by = session.resigned ? " (connector resigned)" : "";
  return `${session.winner} wins after ${rounds} round${rounds === 1 ? "" : "s"}${by}`;
}
