// SVG board rendering: edges under vertices, statuses as CSS classes.

import type { Point } from "./layout.js";
import type { GraphJson, VertexStatus } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface BoardHandlers {
  onVertexClick?: (v: number) => void;
  onVertexHover?: (v: number | null) => void;
}

export function renderBoard(
  svg: SVGSVGElement,
  graph: GraphJson,
  positions: Point[],
  statuses: VertexStatus[],
  overlay: Set<number>,
  selection: Set<number>,
  pendingV: number | null,
  handlers: BoardHandlers = {},
): void {
  svg.innerHTML = "";
  const edges = document.createElementNS(SVG_NS, "g");
  for (const [u, v] of graph.edges) {
    const line = document.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", positions[u].x.toFixed(1));
    line.setAttribute("y1", positions[u].y.toFixed(1));
    line.setAttribute("x2", positions[v].x.toFixed(1));
    line.setAttribute("y2", positions[v].y.toFixed(1));
    const live = statuses[u].endsWith("arena") || statuses[u] === "hub-highlight";
    const liveV = statuses[v].endsWith("arena") || statuses[v] === "hub-highlight";
    line.setAttribute("class", live && liveV ? "edge edge-live" : "edge edge-dead");
    edges.appendChild(line);
  }
  svg.appendChild(edges);

  const nodes = document.createElementNS(SVG_NS, "g");
  for (let v = 0; v < graph.n; v++) {
    const g = document.createElementNS(SVG_NS, "g");
    const classes = ["vertex", `status-${statuses[v]}`];
    if (overlay.has(v)) classes.push("overlay");
    if (selection.has(v)) classes.push("selected");
    if (pendingV === v) classes.push("pending");
    g.setAttribute("class", classes.join(" "));
    g.setAttribute("data-vertex", String(v));

    const circle = document.createElementNS(SVG_NS, "circle");
    circle.setAttribute("cx", positions[v].x.toFixed(1));
    circle.setAttribute("cy", positions[v].y.toFixed(1));
    circle.setAttribute("r", graph.n > 60 ? "7" : "12");
    g.appendChild(circle);

    const label = document.createElementNS(SVG_NS, "text");
    label.setAttribute("x", positions[v].x.toFixed(1));
    label.setAttribute("y", positions[v].y.toFixed(1));
    label.setAttribute("dy", "0.35em");
    label.textContent = String(v);
    g.appendChild(label);

    if (handlers.onVertexClick) {
      g.addEventListener("click", () => handlers.onVertexClick!(v));
    }
    if (handlers.onVertexHover) {
      g.addEventListener("mouseenter", () => handlers.onVertexHover!(v));
      g.addEventListener("mouseleave", () => handlers.onVertexHover!(null));
    }
    nodes.appendChild(g);
  }
  svg.appendChild(nodes);
}

/** Read back the statuses the board currently displays (used by tests). */
export function displayedStatuses(svg: SVGSVGElement): Map<number, string> {
  const out = new Map<number, string>();
  svg.querySelectorAll("g.vertex").forEach((el) => {
    const v = Number(el.getAttribute("data-vertex"));
    const match = (el.getAttribute("class") ?? "").match(/status-(\S+)/);
    out.set(v, match ? match[1] : "");
  });
  return out;
}
