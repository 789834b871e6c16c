// Wire types mirroring the game service JSON exactly.

export interface GraphJson {
  n: number;
  edges: [number, number][];
}

export interface FamilyJson {
  kind: string;
  params: number[];
}

export interface ConfigJson {
  d: number;
  ell: number | null;
  m: number | null;
}

export interface MoveJson {
  v: number;
  W: number[];
}

export interface SessionView {
  id: string;
  mode: "human_connector" | "human_splitter";
  engine: string;
  config: ConfigJson;
  status: "live" | "finished";
  winner: "splitter" | "connector" | null;
  resigned: boolean;
  to_move: "human" | "engine" | null;
  pending_v: number | null;
  arena: number[];
  arenas: number[][];
  arena_sizes: number[];
  moves: MoveJson[];
  graph: GraphJson;
  family: FamilyJson | null;
  hubs: number[] | null;
  created_at: string;
  updated_at: string;
}

export interface ErrorPayload {
  code: string;
  rule: string;
  detail: string;
}

export type VertexStatus =
  | "in-arena"
  | "removed-by-splitter"
  | "outside-ball"
  | "hub-highlight";
