// Application wiring: forms, board interaction, replay. The server is
// the single source of truth; every render uses a server session view.

import { ApiClient, ApiError, NewSessionRequest } from "./api.js";
import { layoutFor, Point } from "./layout.js";
import { renderBoard } from "./board.js";
import { deriveStatuses, describeOutcome, toggleSelection } from "./state.js";
import type { SessionView } from "./types.js";

const FAMILY_PRESETS: Record<string, { params: string; hint: string }> = {
  clique: { params: "4", hint: "m" },
  cycle: { params: "8", hint: "n" },
  path: { params: "7", hint: "n" },
  star: { params: "6", hint: "leaves" },
  grid: { params: "3,3", hint: "rows,cols" },
  subdivided_clique: { params: "4,1", hint: "hubs,subdivisions" },
  erdos_renyi: { params: "10,30,7", hint: "n,percent,seed" },
};

export class App {
  readonly api: ApiClient;
  private doc: Document;
  private session: SessionView | null = null;
  private positions: Point[] = [];
  private selection = new Set<number>();
  private overlay = new Set<number>();
  private replayRound: number | null = null; // null = live view
  private busy = false;

  constructor(doc: Document, base = "") {
    this.doc = doc;
    this.api = new ApiClient(base);
    this.bindForm();
  }

  current(): SessionView | null {
    return this.session;
  }

  private el<T extends HTMLElement>(id: string): T {
    const node = this.doc.getElementById(id);
    if (!node) throw new Error(`missing element #${id}`);
    return node as T;
  }

  private bindForm(): void {
    const kind = this.el<HTMLSelectElement>("family-kind");
    for (const name of Object.keys(FAMILY_PRESETS)) {
      const opt = this.doc.createElement("option");
      opt.value = name;
      opt.textContent = name;
      kind.appendChild(opt);
    }
    kind.value = "clique";
    const applyPreset = () => {
      const preset = FAMILY_PRESETS[kind.value];
      this.el<HTMLInputElement>("family-params").value = preset.params;
      this.el<HTMLInputElement>("family-params").placeholder = preset.hint;
    };
    kind.addEventListener("change", applyPreset);
    applyPreset();

    this.el<HTMLButtonElement>("start-game").addEventListener("click", () => {
      void this.startFromForm();
    });
    this.el<HTMLButtonElement>("confirm-set").addEventListener("click", () => {
      void this.confirmSplitterSet();
    });
    this.el<HTMLButtonElement>("replay-back").addEventListener("click", () => {
      this.stepReplay(-1);
    });
    this.el<HTMLButtonElement>("replay-forward").addEventListener("click", () => {
      this.stepReplay(1);
    });
  }

  async startFromForm(): Promise<void> {
    const kind = this.el<HTMLSelectElement>("family-kind").value;
    const params = this.el<HTMLInputElement>("family-params")
      .value.split(",")
      .map((x) => parseInt(x.trim(), 10));
    const d = parseInt(this.el<HTMLInputElement>("config-d").value, 10);
    const ellRaw = this.el<HTMLInputElement>("config-ell").value.trim();
    const mRaw = this.el<HTMLInputElement>("config-m").value.trim();
    const mode = this.el<HTMLSelectElement>("mode").value as
      | "human_connector"
      | "human_splitter";
    const engine = this.el<HTMLSelectElement>("engine").value;
    await this.startGame({
      family: { kind, params },
      config: {
        d,
        ell: ellRaw ? parseInt(ellRaw, 10) : null,
        m: mRaw ? parseInt(mRaw, 10) : null,
      },
      mode,
      engine,
    });
  }

  async startGame(req: NewSessionRequest): Promise<void> {
    this.showError(null);
    try {
      const session = await this.api.createSession(req);
      this.adopt(session);
    } catch (err) {
      this.surface(err);
    }
  }

  /** Replace the session and re-render from the fresh server view. */
  private adopt(session: SessionView): void {
    this.session = session;
    this.selection = new Set();
    this.overlay = new Set();
    this.replayRound = null;
    this.positions = layoutFor(session.family, session.graph, 640, 480);
    this.render();
  }

  async clickVertex(v: number): Promise<void> {
    const s = this.session;
    if (!s || this.busy || s.status === "finished" || this.replayRound !== null) return;
    if (s.to_move !== "human") return;
    if (s.mode === "human_splitter") {
      this.selection = toggleSelection(this.selection, v, s.config.m);
      this.render();
      return;
    }
    this.busy = true;
    try {
      this.adopt(await this.api.submitMove(s.id, { v }));
      this.showError(null);
    } catch (err) {
      this.surface(err); // board left exactly as served
    } finally {
      this.busy = false;
    }
  }

  async confirmSplitterSet(): Promise<void> {
    const s = this.session;
    if (!s || s.mode !== "human_splitter" || s.status === "finished") return;
    this.busy = true;
    try {
      this.adopt(await this.api.submitMove(s.id, { W: [...this.selection].sort((a, b) => a - b) }));
      this.showError(null);
    } catch (err) {
      this.surface(err);
    } finally {
      this.busy = false;
    }
  }

  async hoverVertex(v: number | null): Promise<void> {
    const s = this.session;
    if (!s || s.status === "finished" || this.replayRound !== null) {
      return;
    }
    if (v === null || s.mode !== "human_connector" || s.to_move !== "human") {
      if (this.overlay.size) {
        this.overlay = new Set();
        this.render();
      }
      return;
    }
    try {
      // ball served by the backend; the client never computes distances
      this.overlay = new Set(await this.api.preview(s.id, v));
    } catch {
      this.overlay = new Set();
    }
    this.render();
  }

  stepReplay(delta: number): void {
    const s = this.session;
    if (!s || s.status !== "finished") return;
    const max = s.moves.length;
    const current = this.replayRound === null ? max : this.replayRound;
    const next = Math.max(0, Math.min(max, current + delta));
    this.replayRound = next === max ? null : next;
    this.overlay = new Set();
    this.render();
  }

  replayPosition(): number {
    const s = this.session;
    if (!s) return 0;
    return this.replayRound === null ? s.moves.length : this.replayRound;
  }

  private surface(err: unknown): void {
    if (err instanceof ApiError) {
      const rule = err.payload.rule ? ` (rule: ${err.payload.rule})` : "";
      this.showError(`${err.payload.detail || err.payload.code}${rule}`);
    } else {
      this.showError(String(err));
    }
  }

  private showError(text: string | null): void {
    const box = this.el<HTMLDivElement>("error-box");
    box.textContent = text ?? "";
    box.hidden = !text;
  }

  render(): void {
    const s = this.session;
    if (!s) return;
    const svg = this.el<HTMLElement>("board") as unknown as SVGSVGElement;
    const round = this.replayRound === null ? s.moves.length : this.replayRound;
    const statuses = deriveStatuses(s, round);
    renderBoard(
      svg,
      s.graph,
      this.positions,
      statuses,
      this.replayRound === null ? this.overlay : new Set(),
      this.selection,
      this.replayRound === null ? s.pending_v : null,
      {
        onVertexClick: (v) => void this.clickVertex(v),
        onVertexHover: (v) => void this.hoverVertex(v),
      },
    );

    const statusLine = this.el<HTMLDivElement>("status-line");
    if (this.replayRound !== null) {
      statusLine.textContent = `replay: after round ${round} of ${s.moves.length} (arena ${s.arena_sizes[round]})`;
    } else if (s.status === "finished") {
      statusLine.textContent = describeOutcome(s);
    } else if (s.to_move === "human") {
      statusLine.textContent =
        s.mode === "human_connector"
          ? "your move: pick a vertex in the arena"
          : `your move: toggle removals${s.config.m ? ` (at most ${s.config.m})` : ""} around ${s.pending_v}, then confirm`;
    } else {
      statusLine.textContent = "engine is thinking";
    }

    const history = this.el<HTMLOListElement>("move-list");
    history.innerHTML = "";
    s.moves.forEach((mv, i) => {
      const li = this.doc.createElement("li");
      li.textContent = `v=${mv.v}, W={${mv.W.join(",")}}, arena ${s.arena_sizes[i + 1]}`;
      if (this.replayRound !== null && i + 1 > round) li.className = "future";
      history.appendChild(li);
    });

    this.el<HTMLDivElement>("confirm-row").hidden = !(
      s.mode === "human_splitter" && s.status === "live" && this.replayRound === null
    );
    this.el<HTMLDivElement>("replay-row").hidden = s.status !== "finished";
  }
}

export function initApp(doc: Document, base = ""): App {
  return new App(doc, base);
}
