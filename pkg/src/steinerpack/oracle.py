"""Exact Steiner tree packing numbers and k-tree (edge-)connectivity.

Everything here is exhaustive and exponential; it is meant for graphs with a
dozen vertices or so. Trees are handled internally as edge bitmasks.

Only trees whose leaves are all terminals are ever generated: trimming a
non-terminal leaf keeps a tree Steiner and shrinks its footprint, so some
maximum packing always consists of such trees.
"""

from __future__ import annotations

import enum
import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator

from .graph import Graph, GraphError, Subgraph, is_steiner_tree


class Mode(enum.Enum):
    EDGE = "edge"
    INTERNAL = "internal"


class OracleError(GraphError):
    pass


class Disconnected(OracleError):
    pass


class TerminalMissing(OracleError):
    pass


class KOutOfRange(OracleError):
    pass


class SameVertex(OracleError):
    pass


class NotSteinerTree(OracleError):
    pass


class SizeLimitExceeded(OracleError):
    pass


@dataclass(frozen=True)
class Limits:
    """Refuse instances above these sizes rather than run for hours."""

    max_vertices: int = 12
    max_edges: int = 20
    sweep_vertices: int = 9


DEFAULT_LIMITS = Limits()


@dataclass(frozen=True)
class PackingWitness:
    terminals: frozenset[int]
    mode: Mode
    trees: tuple[Subgraph, ...]

    @property
    def count(self) -> int:
        return len(self.trees)


@dataclass(frozen=True)
class ConnectivityResult:
    k: int
    mode: Mode
    value: int
    witness_min_set: frozenset[int]
    witness_packing: PackingWitness


def _terminals(g: Graph, s: Iterable[int]) -> list[int]:
    terms = sorted(set(s))
    if len(terms) < 2:
        raise TerminalMissing("terminal set needs at least 2 vertices")
    for v in terms:
        if not 0 <= v < g.vertex_count:
            raise TerminalMissing(f"terminal {v} not in graph")
    return terms


def _require_connected(g: Graph) -> None:
    if not g.whole().is_connected():
        raise Disconnected("graph is not connected")


def _check_limits(g: Graph, limits: Limits) -> None:
    if g.vertex_count > limits.max_vertices or g.edge_count > limits.max_edges:
        raise SizeLimitExceeded(
            f"graph with {g.vertex_count} vertices / {g.edge_count} edges exceeds "
            f"packing limits {limits.max_vertices} / {limits.max_edges}"
        )


def prune_to_terminal_leaves(t: Subgraph, s: Iterable[int]) -> Subgraph:
    s = set(s)
    if not is_steiner_tree(t.parent, t, s):
        raise NotSteinerTree("input is not a Steiner tree for the terminals")
    vertices = set(t.vertices)
    edges = set(t.edges)
    deg = {v: t.degree(v) for v in vertices}
    stack = [v for v in vertices if deg[v] <= 1 and v not in s]
    while stack:
        v = stack.pop()
        if v not in vertices or len(vertices) == 1:
            continue
        vertices.discard(v)
        for w, eid in t.parent.adjacency[v]:
            if eid in edges:
                edges.discard(eid)
                deg[w] -= 1
                if deg[w] == 1 and w not in s:
                    stack.append(w)
    return Subgraph(t.parent, frozenset(vertices), frozenset(edges))


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _Packer:
    """Bitmask state shared by the tree generator and the packing search."""

    def __init__(self, g: Graph, terminals: list[int]):
        self.g = g
        self.terminals = terminals
        self.term_mask = sum(1 << s for s in terminals)
        self.adj = g.adjacency
        self.inc = [0] * g.vertex_count
        for eid, (u, v) in enumerate(g.edges):
            self.inc[u] |= 1 << eid
            self.inc[v] |= 1 << eid

    def trees(self, avail: int, start_mask: int, start_edges: int, first: int) -> Iterator[int]:
        """Trees in ``avail`` extending the tree (start_mask, start_edges) with leaves in S.

        Terminals are attached in ascending order, each by the unique path from
        it to the tree built so far, so every tree comes out exactly once.
        """
        terms = self.terminals
        adj = self.adj

        def extend(i: int, tv: int, te: int) -> Iterator[int]:
            while i < len(terms) and (tv >> terms[i]) & 1:
                i += 1
            if i == len(terms):
                yield te
                return
            s = terms[i]
            yield from walk(s, 1 << s, 0, i, tv, te)

        def walk(x: int, pv: int, pe: int, i: int, tv: int, te: int) -> Iterator[int]:
            for y, eid in adj[x]:
                if not (avail >> eid) & 1 or (pv >> y) & 1:
                    continue
                if (tv >> y) & 1:
                    yield from extend(i + 1, tv | pv, te | pe | (1 << eid))
                else:
                    yield from walk(y, pv | (1 << y), pe | (1 << eid), i, tv, te)

        return extend(first, start_mask, start_edges)

    def all_trees(self) -> Iterator[int]:
        full = (1 << self.g.edge_count) - 1
        s0 = self.terminals[0]
        return self.trees(full, 1 << s0, 0, 1)

    def trees_through(self, avail: int, s0: int, e0: int) -> Iterator[int]:
        """Leaf-terminal trees in ``avail`` that use edge ``e0`` at terminal ``s0``."""
        w = self.g.other_end(e0, s0)
        start = (1 << s0) | (1 << w)
        w_terminal = (self.term_mask >> w) & 1
        for te in self.trees(avail, start, 1 << e0, 0):
            # a non-terminal w must not end up as a leaf
            if w_terminal or (te & self.inc[w]).bit_count() >= 2:
                yield te

    def connected(self, avail: int) -> bool:
        start = self.terminals[0]
        seen = 1 << start
        queue = [start]
        while queue:
            x = queue.pop()
            for y, eid in self.adj[x]:
                if (avail >> eid) & 1 and not (seen >> y) & 1:
                    seen |= 1 << y
                    queue.append(y)
        return seen & self.term_mask == self.term_mask

    def consumed(self, tree: int, mode: Mode) -> int:
        """Edges made unavailable to later trees by picking ``tree``."""
        if mode is Mode.EDGE:
            return tree
        gone = tree
        used = 0
        for eid in _bits(tree):
            u, v = self.g.edges[eid]
            used |= (1 << u) | (1 << v)
        for x in _bits(used & ~self.term_mask):
            gone |= self.inc[x]
        return gone

    def maximum(self, mode: Mode, stop_at: int | None = None) -> list[int]:
        """Largest packing, or the first one reaching ``stop_at`` trees."""
        terms = self.terminals
        goal = stop_at if stop_at is not None else self.g.edge_count + 1
        min_size = len(terms) - 1
        best: list[int] = []
        chosen: list[int] = []

        def search(avail: int) -> None:
            nonlocal best
            count = len(chosen)
            deg, s0 = min(((self.inc[s] & avail).bit_count(), s) for s in terms)
            bound = min(deg, avail.bit_count() // min_size)
            if count + bound <= len(best) or len(best) >= goal or not self.connected(avail):
                return
            at_s0 = self.inc[s0] & avail
            e0 = (at_s0 & -at_s0).bit_length() - 1
            # either some tree of the packing uses e0 ...
            for tree in self.trees_through(avail, s0, e0):
                chosen.append(tree)
                if len(chosen) > len(best):
                    best = list(chosen)
                search(avail & ~self.consumed(tree, mode))
                chosen.pop()
                if len(best) >= min(count + bound, goal):
                    return
            # ... or none does
            search(avail & ~(1 << e0))

        search((1 << self.g.edge_count) - 1)
        return best


def _to_subgraph(g: Graph, mask: int) -> Subgraph:
    return Subgraph.from_edges(g, _bits(mask))


def enumerate_minimal_steiner_trees(g: Graph, s: Iterable[int]) -> Iterator[Subgraph]:
    """Every subtree containing ``s`` whose leaves all lie in ``s``, sorted by edge ids."""
    terms = _terminals(g, s)
    _require_connected(g)
    masks = list(_Packer(g, terms).all_trees())
    masks.sort(key=lambda m: list(_bits(m)))
    for m in masks:
        yield _to_subgraph(g, m)


def max_disjoint_packing(
    g: Graph, s: Iterable[int], mode: Mode = Mode.EDGE, limits: Limits = DEFAULT_LIMITS
) -> PackingWitness:
    """Maximum family of pairwise disjoint S-Steiner trees, with a witness.

    Branch and bound on the lowest available edge at the terminal of smallest
    remaining degree: a maximum packing either has a tree through that edge or
    never uses it. The witness is the first maximum packing met in that order.
    """
    terms = _terminals(g, s)
    _check_limits(g, limits)
    _require_connected(g)
    return _witness(g, terms, mode, _Packer(g, terms).maximum(mode))


def _witness(g: Graph, terms: Iterable[int], mode: Mode, masks: list[int]) -> PackingWitness:
    trees = tuple(sorted((_to_subgraph(g, m) for m in masks), key=Subgraph.sorted_edges))
    return PackingWitness(frozenset(terms), mode, trees)


def tree_connectivity(
    g: Graph, k: int, mode: Mode = Mode.EDGE, limits: Limits = DEFAULT_LIMITS
) -> ConnectivityResult:
    """Minimum packing number over all k-subsets of vertices."""
    n = g.vertex_count
    if not 2 <= k <= n:
        raise KOutOfRange(f"k={k} outside 2..{n}")
    if n > limits.sweep_vertices:
        raise SizeLimitExceeded(f"{n} vertices exceeds sweep limit {limits.sweep_vertices}")
    _check_limits(g, limits)
    _require_connected(g)
    best: PackingWitness | None = None
    for subset in itertools.combinations(range(n), k):
        packer = _Packer(g, list(subset))
        # reaching the current minimum proves this subset cannot lower it, so
        # only subsets that do lower it are searched to the end
        masks = packer.maximum(mode, stop_at=best.count if best else None)
        if best is None or len(masks) < best.count:
            best = _witness(g, subset, mode, masks)
        # a connected graph always has a spanning tree, so 1 is the floor
        if best.count <= 1:
            break
    assert best is not None
    return ConnectivityResult(k, mode, best.count, best.terminals, best)


def edge_connectivity_flow(g: Graph, u: int, v: int) -> int:
    """Number of edge-disjoint u-v paths by unit-capacity augmenting paths."""
    if u == v:
        raise SameVertex(f"u and v are both {u}")
    for x in (u, v):
        if not 0 <= x < g.vertex_count:
            raise TerminalMissing(f"vertex {x} not in graph")
    residual: dict[int, dict[int, int]] = {x: {} for x in range(g.vertex_count)}
    for a, b in g.edges:
        residual[a][b] = 1
        residual[b][a] = 1
    flow = 0
    while True:
        pred = {u: u}
        queue = deque([u])
        while queue and v not in pred:
            x = queue.popleft()
            for y, cap in residual[x].items():
                if cap > 0 and y not in pred:
                    pred[y] = x
                    queue.append(y)
        if v not in pred:
            return flow
        y = v
        while y != u:
            x = pred[y]
            residual[x][y] -= 1
            residual[y][x] += 1
            y = x
        flow += 1
