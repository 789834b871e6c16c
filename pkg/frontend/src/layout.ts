// Vertex positioning. Purely cosmetic: vertex ids are the source of truth.

import type { FamilyJson, GraphJson } from "./types.js";

export interface Point {
  x: number;
  y: number;
}

export function circleLayout(n: number, w: number, h: number, shrink = 0.82): Point[] {
  const cx = w / 2;
  const cy = h / 2;
  const r = (Math.min(w, h) / 2) * shrink;
  const pts: Point[] = [];
  for (let i = 0; i < n; i++) {
    const a = (2 * Math.PI * i) / n - Math.PI / 2;
    pts.push({ x: cx + r * Math.cos(a), y: cy + r * Math.sin(a) });
  }
  return pts;
}

export function gridLayout(rows: number, cols: number, w: number, h: number): Point[] {
  const mx = w * 0.12;
  const my = h * 0.12;
  const dx = cols > 1 ? (w - 2 * mx) / (cols - 1) : 0;
  const dy = rows > 1 ? (h - 2 * my) / (rows - 1) : 0;
  const pts: Point[] = [];
  for (let r = 0; r < rows; r++) {
    for (let c = 0; c < cols; c++) {
      pts.push({ x: mx + c * dx, y: my + r * dy });
    }
  }
  return pts;
}

export function pathLayout(n: number, w: number, h: number): Point[] {
  const mx = w * 0.08;
  const dx = n > 1 ? (w - 2 * mx) / (n - 1) : 0;
  return Array.from({ length: n }, (_, i) => ({ x: mx + i * dx, y: h / 2 }));
}

export function starLayout(leaves: number, w: number, h: number): Point[] {
  return [{ x: w / 2, y: h / 2 }, ...circleLayout(leaves, w, h)];
}

/** Hubs on a circle, each subdivision chain spread along its hub chord. */
export function subdividedCliqueLayout(
  m: number,
  t: number,
  w: number,
  h: number,
): Point[] {
  const hubs = circleLayout(m, w, h);
  const pts = [...hubs];
  for (let i = 0; i < m; i++) {
    for (let j = i + 1; j < m; j++) {
      for (let k = 1; k <= t; k++) {
        const f = k / (t + 1);
        pts.push({
          x: hubs[i].x + f * (hubs[j].x - hubs[i].x),
          y: hubs[i].y + f * (hubs[j].y - hubs[i].y),
        });
      }
    }
  }
  return pts;
}

/** Deterministic seeded spring layout for unknown families. */
export function forceLayout(
  n: number,
  edges: [number, number][],
  w: number,
  h: number,
  iterations = 150,
  seed = 1,
): Point[] {
  let state = seed >>> 0 || 1;
  const rand = () => {
    // xorshift32: deterministic across runs and platforms
    state ^= state << 13;
    state ^= state >>> 17;
    state ^= state << 5;
    state >>>= 0;
    return state / 0xffffffff;
  };
  const pts: Point[] = Array.from({ length: n }, () => ({
    x: w * (0.2 + 0.6 * rand()),
    y: h * (0.2 + 0.6 * rand()),
  }));
  if (n <= 1) return pts.map(() => ({ x: w / 2, y: h / 2 }));
  const ideal = Math.min(w, h) / Math.sqrt(n + 1);
  for (let it = 0; it < iterations; it++) {
    const disp: Point[] = pts.map(() => ({ x: 0, y: 0 }));
    for (let i = 0; i < n; i++) {
      for (let j = i + 1; j < n; j++) {
        let dx = pts[i].x - pts[j].x;
        let dy = pts[i].y - pts[j].y;
        let d2 = dx * dx + dy * dy;
        if (d2 < 1e-6) {
          dx = rand() - 0.5;
          dy = rand() - 0.5;
          d2 = dx * dx + dy * dy;
        }
        const rep = (ideal * ideal) / d2;
        disp[i].x += dx * rep;
        disp[i].y += dy * rep;
        disp[j].x -= dx * rep;
        disp[j].y -= dy * rep;
      }
    }
    for (const [u, v] of edges) {
      const dx = pts[u].x - pts[v].x;
      const dy = pts[u].y - pts[v].y;
      const d = Math.sqrt(dx * dx + dy * dy) || 1e-3;
      const att = (d * d) / ideal / d;
      disp[u].x -= dx * att;
      disp[u].y -= dy * att;
      disp[v].x += dx * att;
      disp[v].y += dy * att;
    }
    const temp = 0.1 * Math.min(w, h) * (1 - it / iterations);
    for (let i = 0; i < n; i++) {
      const d = Math.sqrt(disp[i].x ** 2 + disp[i].y ** 2) || 1e-3;
      const step = Math.min(d, temp);
      pts[i].x += (disp[i].x / d) * step;
      pts[i].y += (disp[i].y / d) * step;
      pts[i].x = Math.max(w * 0.05, Math.min(w * 0.95, pts[i].x));
      pts[i].y = Math.max(h * 0.05, Math.min(h * 0.95, pts[i].y));
    }
  }
  return pts;
}

/** Family-aware layout dispatch with a force-directed fallback. */
export function layoutFor(
  family: FamilyJson | null,
  graph: GraphJson,
  w: number,
  h: number,
): Point[] {
  if (family) {
    const p = family.params;
    switch (family.kind) {
      case "cycle":
      case "clique":
        return circleLayout(graph.n, w, h);
      case "path":
        return pathLayout(graph.n, w, h);
      case "star":
        return starLayout(p[0], w, h);
      case "grid":
        return gridLayout(p[0], p[1], w, h);
      case "subdivided_clique":
        return subdividedCliqueLayout(p[0], p[1], w, h);
    }
  }
  return forceLayout(graph.n, graph.edges, w, h);
}
