// HTTP client for the game service; the server owns all game rules.

import type { ErrorPayload, SessionView } from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public payload: ErrorPayload,
  ) {
    super(payload.detail || payload.rule || payload.code);
  }
}

export interface NewSessionRequest {
  family?: { kind: string; params: number[] };
  edge_list?: string;
  graph?: { n: number; edges: [number, number][] };
  config: { d: number; ell?: number | null; m?: number | null };
  mode: "human_connector" | "human_splitter";
  engine: string;
}

async function unwrap<T>(res: Response): Promise<T> {
  const body = await res.json();
  if (!res.ok) {
    const err: ErrorPayload = body?.error ?? {
      code: `http_${res.status}`,
      rule: "",
      detail: res.statusText,
    };
    throw new ApiError(res.status, err);
  }
  return body as T;
}

export class ApiClient {
  constructor(private base: string = "") {}

  private url(path: string): string {
    return this.base + path;
  }

  async health(): Promise<{ status: string }> {
    return unwrap(await fetch(this.url("/api/health")));
  }

  async createSession(req: NewSessionRequest): Promise<SessionView> {
    const res = await fetch(this.url("/api/sessions"), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(req),
    });
    const body = await unwrap<{ session: SessionView }>(res);
    return body.session;
  }

  async getSession(id: string): Promise<SessionView> {
    const body = await unwrap<{ session: SessionView }>(
      await fetch(this.url(`/api/sessions/${id}`)),
    );
    return body.session;
  }

  async listSessions(page = 1, perPage = 20): Promise<SessionView[]> {
    const body = await unwrap<{ sessions: SessionView[] }>(
      await fetch(this.url(`/api/sessions?page=${page}&per_page=${perPage}`)),
    );
    return body.sessions;
  }

  async submitMove(
    id: string,
    move: { v: number } | { W: number[] },
  ): Promise<SessionView> {
    const res = await fetch(this.url(`/api/sessions/${id}/moves`), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(move),
    });
    const body = await unwrap<{ session: SessionView }>(res);
    return body.session;
  }

  async preview(id: string, v: number): Promise<number[]> {
    const body = await unwrap<{ v: number; ball: number[] }>(
      await fetch(this.url(`/api/sessions/${id}/preview?v=${v}`)),
    );
    return body.ball;
  }
}
