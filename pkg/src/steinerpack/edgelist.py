"""Plain-text edge lists.

::

    # comment
    n 5
    0 1
    1 2

Edge ids follow line order.
"""

from __future__ import annotations

from pathlib import Path
from typing import TextIO

from .graph import Graph, GraphError, LineGraphMap, build_graph


class ParseError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


def parse_edgelist(text: str) -> Graph:
    vertex_count = None
    pairs = []
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        parts = body.split()
        if vertex_count is None:
            if len(parts) != 2 or parts[0] != "n" or not parts[1].isdigit():
                raise ParseError(f"expected 'n <vertex_count>', got {body!r}", lineno)
            vertex_count = int(parts[1])
            continue
        if len(parts) != 2:
            raise ParseError(f"expected 'u v', got {body!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer vertex in {body!r}", lineno) from None
        pairs.append((u, v))
        lines.append(lineno)
    if vertex_count is None:
        raise ParseError("missing 'n <vertex_count>' header")
    seen: set[frozenset[int]] = set()
    for pair, lineno in zip(pairs, lines):
        try:
            build_graph(vertex_count, [pair])
        except GraphError as exc:
            raise ParseError(str(exc), lineno) from None
        if frozenset(pair) in seen:
            raise ParseError(f"duplicate edge {pair}", lineno)
        seen.add(frozenset(pair))
    return build_graph(vertex_count, pairs)


def read_edgelist(path: str | Path) -> Graph:
    return parse_edgelist(Path(path).read_text(encoding="utf-8"))


def format_edgelist(g: Graph) -> str:
    out = [f"n {g.vertex_count}"]
    out.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(out) + "\n"


def format_line_graph(lmap: LineGraphMap) -> str:
    """L(G) as an edge list; the edge <-> vertex map rides along as comments."""
    head = [f"# e {e} -> v {lmap.edge_to_vertex(e)}" for e in range(lmap.source.edge_count)]
    return "\n".join(head) + ("\n" if head else "") + format_edgelist(lmap.line_graph)


def write_edgelist(g: Graph, stream: TextIO) -> None:
    stream.write(format_edgelist(g))
