"""Simple undirected graphs with stable edge ids, subgraph views and line graphs.

Vertices are ``0..vertex_count-1``. Edges are numbered in insertion order and
those numbers never change: every :class:`Subgraph` refers to its parent's
vertex and edge ids, so trees can be compared across a packing without any
re-indexing.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence, Union


class GraphError(ValueError):
    """Base class for malformed graphs and violated preconditions."""


class LoopEdge(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class VertexOutOfRange(GraphError):
    pass


class UnknownEdgeId(GraphError):
    pass


class NotConnected(GraphError):
    pass


class NotATree(GraphError):
    pass


class RootNotInTree(GraphError):
    pass


class NotUnicyclic(GraphError):
    pass


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per vertex, ``(neighbor, edge_id)`` pairs in ascending neighbor order."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.vertex_count)]
        for eid, (u, v) in enumerate(self.edges):
            adj[u].append((v, eid))
            adj[v].append((u, eid))
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def edge_index(self) -> dict[frozenset[int], int]:
        return {frozenset(e): eid for eid, e in enumerate(self.edges)}

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def edge_id(self, u: int, v: int) -> int:
        try:
            return self.edge_index[frozenset((u, v))]
        except KeyError:
            raise UnknownEdgeId(f"no edge ({u}, {v})") from None

    def other_end(self, eid: int, v: int) -> int:
        a, b = self.edges[eid]
        return b if a == v else a

    def whole(self) -> Subgraph:
        return Subgraph(self, frozenset(range(self.vertex_count)), frozenset(range(self.edge_count)))


@dataclass(frozen=True)
class Subgraph:
    """A vertex set plus an edge set, both in the ids of ``parent``."""

    parent: Graph = field(repr=False)
    vertices: frozenset[int]
    edges: frozenset[int]

    def __post_init__(self) -> None:
        for eid in self.edges:
            if not 0 <= eid < self.parent.edge_count:
                raise UnknownEdgeId(f"edge id {eid} not in parent graph")
            u, v = self.parent.edges[eid]
            if u not in self.vertices or v not in self.vertices:
                raise GraphError(f"edge {eid}=({u}, {v}) has an endpoint outside the vertex set")

    @classmethod
    def from_edges(cls, parent: Graph, edges: Iterable[int]) -> Subgraph:
        edges = frozenset(edges)
        for eid in edges:
            if not 0 <= eid < parent.edge_count:
                raise UnknownEdgeId(f"edge id {eid} not in parent graph")
        vertices = frozenset(x for eid in edges for x in parent.edges[eid])
        return cls(parent, vertices, edges)

    def sorted_edges(self) -> list[int]:
        return sorted(self.edges)

    def neighbors(self, v: int) -> list[tuple[int, int]]:
        return [(w, eid) for w, eid in self.parent.adjacency[v] if eid in self.edges]

    def degree(self, v: int) -> int:
        return sum(1 for _, eid in self.parent.adjacency[v] if eid in self.edges)

    def leaves(self) -> set[int]:
        return {v for v in self.vertices if self.degree(v) == 1}

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        start = min(self.vertices)
        return len(_reach(self, start)) == len(self.vertices)

    def is_tree(self) -> bool:
        return bool(self.vertices) and len(self.edges) == len(self.vertices) - 1 and self.is_connected()

    def without_edge(self, eid: int) -> Subgraph:
        return Subgraph(self.parent, self.vertices, self.edges - {eid})


GraphLike = Union[Graph, Subgraph]


def _view(g: GraphLike) -> Subgraph:
    return g.whole() if isinstance(g, Graph) else g


def _reach(sub: Subgraph, start: int) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y, _ in sub.neighbors(x):
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def build_graph(vertex_count: int, pairs: Iterable[Sequence[int]]) -> Graph:
    """Validate ``pairs`` and return a simple graph with edge ids in input order."""
    if vertex_count < 0:
        raise GraphError(f"negative vertex count {vertex_count}")
    seen: set[frozenset[int]] = set()
    edges = []
    for pair in pairs:
        u, v = (int(x) for x in pair)
        if u == v:
            raise LoopEdge(f"loop edge ({u}, {v})")
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise VertexOutOfRange(f"edge ({u}, {v}) outside 0..{vertex_count - 1}")
        key = frozenset((u, v))
        if key in seen:
            raise DuplicateEdge(f"duplicate edge ({u}, {v})")
        seen.add(key)
        edges.append((u, v))
    return Graph(vertex_count, tuple(edges))


def connected_components(g: GraphLike) -> list[Subgraph]:
    """Maximal connected pieces, ordered by their smallest vertex id."""
    sub = _view(g)
    remaining = set(sub.vertices)
    comps = []
    while remaining:
        start = min(remaining)
        verts = _reach(sub, start)
        remaining -= verts
        edges = frozenset(eid for eid in sub.edges if sub.parent.edges[eid][0] in verts)
        comps.append(Subgraph(sub.parent, frozenset(verts), edges))
    return comps


class ComponentClass(enum.Enum):
    TREE = "tree"
    UNICYCLIC = "unicyclic"
    HEAVY = "heavy"


def classify_component(c: Subgraph) -> ComponentClass:
    if not c.vertices or not c.is_connected():
        raise NotConnected("component must be nonempty and connected")
    excess = len(c.edges) - len(c.vertices)
    if excess == -1:
        return ComponentClass.TREE
    if excess == 0:
        return ComponentClass.UNICYCLIC
    return ComponentClass.HEAVY


def edge_induced_subgraph(g: Graph, s: Iterable[int]) -> Subgraph:
    return Subgraph.from_edges(g, s)


@dataclass(frozen=True)
class LineGraphMap:
    """L(G) together with the edge <-> line-vertex correspondence.

    Line vertex ids coincide with edge ids of the source graph, so both maps
    are the identity; they are kept explicit so callers never rely on that.
    """

    source: Graph = field(repr=False)
    line_graph: Graph

    def edge_to_vertex(self, eid: int) -> int:
        if not 0 <= eid < self.source.edge_count:
            raise UnknownEdgeId(f"edge id {eid} not in source graph")
        return eid

    def vertex_to_edge(self, vid: int) -> int:
        if not 0 <= vid < self.line_graph.vertex_count:
            raise VertexOutOfRange(f"line vertex {vid} out of range")
        return vid


def line_graph(g: Graph) -> LineGraphMap:
    pairs = []
    for v in range(g.vertex_count):
        incident = sorted(eid for _, eid in g.adjacency[v])
        for i, a in enumerate(incident):
            for b in incident[i + 1:]:
                pairs.append((a, b))
    # simple graph: two distinct edges share at most one endpoint
    pairs.sort()
    return LineGraphMap(g, build_graph(g.edge_count, pairs))


@dataclass(frozen=True)
class RootedTree:
    tree: Subgraph
    root: int
    level: dict[int, int] = field(compare=False)
    parent_edge: dict[int, int] = field(compare=False)

    def parent(self, v: int) -> int:
        return self.tree.parent.other_end(self.parent_edge[v], v)


def _bfs_tree(sub: Subgraph, root: int) -> tuple[dict[int, int], dict[int, int]]:
    level = {root: 0}
    parent_edge: dict[int, int] = {}
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y, eid in sub.neighbors(x):
            if y not in level:
                level[y] = level[x] + 1
                parent_edge[y] = eid
                queue.append(y)
    return level, parent_edge


def root_tree(t: Subgraph, root: int) -> RootedTree:
    """Levels are distances from ``root``; each non-root vertex gets its unique edge one level up."""
    if root not in t.vertices:
        raise RootNotInTree(f"root {root} not in tree")
    if not t.is_tree():
        raise NotATree("subgraph is not a tree")
    level, parent_edge = _bfs_tree(t, root)
    return RootedTree(t, root, level, parent_edge)


def cycle_edge_set(c: Subgraph) -> set[int]:
    """Edges of the unique cycle of a unicyclic component (leaf stripping)."""
    if classify_component(c) is not ComponentClass.UNICYCLIC:
        raise NotUnicyclic("component is not unicyclic")
    edges = set(c.edges)
    deg = {v: c.degree(v) for v in c.vertices}
    stack = [v for v, d in deg.items() if d == 1]
    while stack:
        v = stack.pop()
        for w, eid in c.parent.adjacency[v]:
            if eid in edges:
                edges.discard(eid)
                deg[v] -= 1
                deg[w] -= 1
                if deg[w] == 1:
                    stack.append(w)
    return edges


def spanning_tree(g: GraphLike, root: int) -> RootedTree:
    """Breadth-first spanning tree, neighbors visited in ascending vertex id."""
    sub = _view(g)
    if root not in sub.vertices:
        raise RootNotInTree(f"root {root} not in graph")
    level, parent_edge = _bfs_tree(sub, root)
    if len(level) != len(sub.vertices):
        raise NotConnected("graph is not connected")
    tree = Subgraph(sub.parent, sub.vertices, frozenset(parent_edge.values()))
    return RootedTree(tree, root, level, parent_edge)


@dataclass(frozen=True)
class SteinerCheck:
    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_steiner_tree(g: Graph, t: Subgraph, s: Iterable[int]) -> SteinerCheck:
    if t.parent != g:
        return SteinerCheck(False, "not-a-subgraph")
    if not t.is_tree():
        return SteinerCheck(False, "not-a-tree")
    missing = set(s) - t.vertices
    if missing:
        return SteinerCheck(False, f"missing-terminal:{min(missing)}")
    return SteinerCheck(True)
