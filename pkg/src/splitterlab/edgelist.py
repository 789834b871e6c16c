"""Canonical edge-list text format.

Layout: optional `#` comment lines, one `n m` header line, then exactly
m lines `u v` with 0 <= u < v < n, each pair unique. Writers emit edges
sorted lexicographically.
"""

from __future__ import annotations

import io
from pathlib import Path

from .graph import Graph


class EdgeListError(ValueError):
    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        prefix = f"line {line_no}: " if line_no is not None else ""
        super().__init__(prefix + message)


def loads(text: str) -> Graph:
    header: tuple[int, int] | None = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 2:
                raise EdgeListError("header must be 'n m'", line_no)
            try:
                n, m = int(parts[0]), int(parts[1])
            except ValueError:
                raise EdgeListError("header must contain two integers", line_no) from None
            if n < 0 or m < 0:
                raise EdgeListError("header counts must be nonnegative", line_no)
            header = (n, m)
            continue
        if len(parts) != 2:
            raise EdgeListError("edge line must be 'u v'", line_no)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListError("edge endpoints must be integers", line_no) from None
        n = header[0]
        if u == v:
            raise EdgeListError(f"self-loop at vertex {u}", line_no)
        if not (0 <= u < v < n):
            raise EdgeListError(f"edge ({u},{v}) violates 0 <= u < v < n={n}", line_no)
        if (u, v) in seen:
            raise EdgeListError(f"duplicate edge ({u},{v})", line_no)
        seen.add((u, v))
        edges.append((u, v))
    if header is None:
        raise EdgeListError("missing 'n m' header")
    if len(edges) != header[1]:
        raise EdgeListError(f"header promises {header[1]} edges, found {len(edges)}")
    return Graph.from_edges(header[0], edges)


def dumps(g: Graph, comment: str | None = None) -> str:
    buf = io.StringIO()
    if comment:
        for line in comment.splitlines():
            buf.write(f"# {line}\n")
    buf.write(f"{g.n} {g.m}\n")
    for u, v in sorted(g.edges):
        buf.write(f"{u} {v}\n")
    return buf.getvalue()


def load(path: str | Path) -> Graph:
    return loads(Path(path).read_text())


def dump(g: Graph, path: str | Path, comment: str | None = None) -> None:
    Path(path).write_text(dumps(g, comment=comment))
