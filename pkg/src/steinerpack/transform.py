"""Turn m edge-disjoint Q-Steiner trees of G into m internally disjoint trees of L(G).

Given k terminal edges S_G of G, the terminal edges are split by the shape of
the components of G[S_G]. Components with at least two more edges than
needed for a tree ("heavy") contribute all their vertices to Q; every tree or
unicyclic component contributes one distinct endpoint per edge. A packing of
edge-disjoint Q-Steiner trees T_1..T_m in G is then pushed into L(G): each
L(T_r) is grown by one pendant vertex for every terminal edge T_r misses, and
a spanning tree of the grown graph is taken.

Every free choice is resolved towards the smallest id so the output is a pure
function of its inputs.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from .graph import (
    ComponentClass,
    Graph,
    GraphError,
    LineGraphMap,
    RootedTree,
    Subgraph,
    UnknownEdgeId,
    classify_component,
    connected_components,
    cycle_edge_set,
    edge_induced_subgraph,
    is_steiner_tree,
    line_graph,
    root_tree,
    spanning_tree,
)
from .oracle import (
    DEFAULT_LIMITS,
    Disconnected,
    Limits,
    Mode,
    PackingWitness,
    max_disjoint_packing,
    tree_connectivity,
)


class TransformError(GraphError):
    pass


class HypothesisViolated(TransformError):
    pass


class PrereqViolated(TransformError):
    pass


class NotAdjacentInLineGraph(TransformError):
    pass


class PackingMismatch(TransformError):
    pass


class NotEdgeDisjoint(TransformError):
    pass


class RootInTargets(TransformError):
    pass


class TargetNotInTree(TransformError):
    pass


class VerificationFailed(TransformError):
    """The construction produced something that is not an internally disjoint packing.

    This is a bug, never a user error; ``certificate`` holds the offending input.
    """

    def __init__(self, message: str, certificate: dict):
        super().__init__(message)
        self.certificate = certificate


class Case(enum.Enum):
    ONE = "case1"
    TWO = "case2"


@dataclass(frozen=True)
class CasePartition:
    case: Case
    q1: frozenset[int]
    q2: frozenset[int]
    s1: frozenset[int]
    s2: frozenset[int]
    corr_vertex: dict[int, int] = field(compare=False)
    removed_cycle_edge: dict[int, int] = field(compare=False)
    component_roots: dict[int, int] = field(compare=False)
    component_classes: tuple[ComponentClass, ...]
    extra_vertex: int | None = None

    @property
    def edges(self) -> frozenset[int]:
        return self.s1 | self.s2


def _terminal_edges(g: Graph, s_g: Iterable[int]) -> list[int]:
    edges = sorted(set(s_g))
    for eid in edges:
        if not 0 <= eid < g.edge_count:
            raise UnknownEdgeId(f"edge id {eid} not in graph")
    if len(edges) < 2:
        raise HypothesisViolated("need at least 2 terminal edges")
    return edges


def _check_hypotheses(g: Graph, k: int) -> None:
    if g.vertex_count < k or g.edge_count < k:
        raise HypothesisViolated(
            f"k={k} needs at least k vertices and k edges, graph has "
            f"{g.vertex_count} and {g.edge_count}"
        )
    if not g.whole().is_connected():
        raise Disconnected("graph is not connected")


def partition_terminal_edges(g: Graph, s_g: Iterable[int]) -> CasePartition:
    edges = _terminal_edges(g, s_g)
    _check_hypotheses(g, len(edges))
    sub = edge_induced_subgraph(g, edges)
    comps = connected_components(sub)
    classes = tuple(classify_component(c) for c in comps)

    if all(c is ComponentClass.HEAVY for c in classes):
        q_star = sub.vertices
        # |Q*| <= k-1 < |V|, so some vertex is left over
        extra = min(v for v in range(g.vertex_count) if v not in q_star)
        return CasePartition(
            Case.ONE, q_star, frozenset(), frozenset(edges), frozenset(),
            {}, {}, {}, classes, extra,
        )

    q1: set[int] = set()
    s1: set[int] = set()
    s2: set[int] = set()
    corr: dict[int, int] = {}
    removed: dict[int, int] = {}
    roots: dict[int, int] = {}
    for idx, (comp, cls) in enumerate(zip(comps, classes)):
        if cls is ComponentClass.HEAVY:
            q1 |= comp.vertices
            s1 |= comp.edges
            continue
        if cls is ComponentClass.UNICYCLIC:
            cut = min(cycle_edge_set(comp))
            root = min(g.edges[cut])
            removed[idx] = cut
            body = comp.without_edge(cut)
            corr[cut] = root
        else:
            root = min(comp.vertices)
            body = comp
        roots[idx] = root
        rooted = root_tree(body, root)
        for v, eid in rooted.parent_edge.items():
            corr[eid] = v
        s2 |= comp.edges
    return CasePartition(
        Case.TWO, frozenset(q1), frozenset(corr.values()), frozenset(s1), frozenset(s2),
        corr, removed, roots, classes, None,
    )


def terminal_vertex_set(p: CasePartition) -> frozenset[int]:
    if p.case is Case.ONE:
        return p.q1 | {p.extra_vertex}
    return p.q1 | p.q2


def packing_root(p: CasePartition) -> int:
    if p.case is Case.ONE:
        return p.extra_vertex
    return min(p.q2)


def corresponding_edges(t: RootedTree, targets: Iterable[int]) -> dict[int, int]:
    out = {}
    for v in sorted(targets):
        if v == t.root:
            raise RootInTargets(f"target {v} is the root")
        if v not in t.tree.vertices:
            raise TargetNotInTree(f"target {v} not in tree")
        out[v] = t.parent_edge[v]
    return out


@dataclass(frozen=True)
class AugmentedLineTree:
    """L(T_r) inside L(G), plus pendant terminals hung on it."""

    base: Subgraph
    added_terminals: frozenset[int] = frozenset()
    attach_edge: dict[int, int] = field(default_factory=dict, compare=False)

    def attach(self, vertex: int, anchor: int) -> AugmentedLineTree:
        lg = self.base.parent
        if anchor not in self.base.vertices or vertex in self.base.vertices:
            raise PrereqViolated(f"cannot hang line vertex {vertex} on {anchor}")
        try:
            eid = lg.edge_id(vertex, anchor)
        except UnknownEdgeId:
            raise NotAdjacentInLineGraph(f"line vertices {vertex} and {anchor} are not adjacent") from None
        base = Subgraph(lg, self.base.vertices | {vertex}, self.base.edges | {eid})
        return replace(
            self,
            base=base,
            added_terminals=self.added_terminals | {vertex},
            attach_edge={**self.attach_edge, vertex: eid},
        )


def line_tree(t: Subgraph, lmap: LineGraphMap) -> AugmentedLineTree:
    """L(T) as the induced subgraph of L(G) on the line vertices of T's edges."""
    verts = frozenset(lmap.edge_to_vertex(e) for e in t.edges)
    lg = lmap.line_graph
    edges = frozenset(eid for eid, (a, b) in enumerate(lg.edges) if a in verts and b in verts)
    return AugmentedLineTree(Subgraph(lg, verts, edges))


def apply_operation_A(
    aug: AugmentedLineTree,
    e: int,
    r: int,
    packing: Sequence[RootedTree],
    corr_edges: Sequence[dict[int, int]],
    lmap: LineGraphMap,
) -> AugmentedLineTree:
    t_r = packing[r]
    if e in t_r.tree.edges:
        return aug
    g = lmap.source
    u, v = g.edges[e]
    for x in (u, v):
        if x not in corr_edges[r]:
            raise PrereqViolated(f"endpoint {x} of edge {e} has no corresponding edge in tree {r}")
    owner = next((s for s, t in enumerate(packing) if s != r and e in t.tree.edges), None)
    if owner is not None:
        # e is the corresponding edge of exactly one of its ends in T_owner
        ends = [x for x in (u, v) if corr_edges[owner].get(x) == e]
        if len(ends) != 1:
            raise PrereqViolated(f"edge {e} is not a corresponding edge in tree {owner}")
        far = g.other_end(e, ends[0])
        anchor_edge = corr_edges[r][far]
    else:
        anchor_edge = min(corr_edges[r][u], corr_edges[r][v])
    return aug.attach(lmap.edge_to_vertex(e), lmap.edge_to_vertex(anchor_edge))


def apply_operation_B(
    aug: AugmentedLineTree,
    e: int,
    t_r: RootedTree,
    p: CasePartition,
    lmap: LineGraphMap,
) -> AugmentedLineTree:
    if e in t_r.tree.edges:
        return aug
    vi = p.corr_vertex[e]
    if vi not in t_r.tree.vertices:
        raise PrereqViolated(f"corresponding vertex {vi} of edge {e} not in tree")
    if vi != t_r.root:
        anchor_edge = t_r.parent_edge[vi]
    else:
        incident = [eid for _, eid in t_r.tree.neighbors(vi) if eid != e]
        if not incident:
            raise PrereqViolated(f"vertex {vi} has no tree edge other than {e}")
        anchor_edge = min(incident)
    return aug.attach(lmap.edge_to_vertex(e), lmap.edge_to_vertex(anchor_edge))


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    reason: str | None = None
    pair: tuple[int, int] | None = None
    shared_vertex: int | None = None
    shared_edge: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_internally_disjoint(lg: Graph, trees: Sequence[Subgraph], s_l: Iterable[int]) -> VerificationReport:
    s_l = frozenset(s_l)
    for i, t in enumerate(trees):
        check = is_steiner_tree(lg, t, s_l)
        if not check:
            return VerificationReport(False, f"tree {i}: {check.reason}")
    for i, j in itertools.combinations(range(len(trees)), 2):
        a, b = trees[i], trees[j]
        shared_edges = a.edges & b.edges
        if shared_edges:
            return VerificationReport(False, "shared-edge", (i, j), shared_edge=min(shared_edges))
        extra = (a.vertices & b.vertices) - s_l
        if extra:
            return VerificationReport(False, "shared-vertex", (i, j), shared_vertex=min(extra))
    return VerificationReport(True)


@dataclass(frozen=True)
class Replay:
    """Everything the construction built on the way to its output trees."""

    partition: CasePartition
    terminals: frozenset[int]
    root: int
    rooted: tuple[RootedTree, ...]
    corr_edges: tuple[dict[int, int], ...] = field(compare=False)
    augmented: tuple[AugmentedLineTree, ...]
    trees: tuple[Subgraph, ...]
    line_terminals: frozenset[int]
    report: VerificationReport


def replay(g: Graph, s_g: Iterable[int], packing: PackingWitness, lmap: LineGraphMap | None = None) -> Replay:
    s_g = _terminal_edges(g, s_g)
    p = partition_terminal_edges(g, s_g)
    q = terminal_vertex_set(p)
    if packing.terminals != q:
        raise PackingMismatch(f"packing terminals {sorted(packing.terminals)} != required {sorted(q)}")
    for i, t in enumerate(packing.trees):
        check = is_steiner_tree(g, t, q)
        if not check:
            raise PackingMismatch(f"packing tree {i} is not a Q-Steiner tree: {check.reason}")
    for i, j in itertools.combinations(range(packing.count), 2):
        if packing.trees[i].edges & packing.trees[j].edges:
            raise NotEdgeDisjoint(f"packing trees {i} and {j} share an edge")
    if lmap is None:
        lmap = line_graph(g)

    root = packing_root(p)
    rooted = tuple(root_tree(t, root) for t in packing.trees)
    corr_edges = tuple(corresponding_edges(rt, p.q1) for rt in rooted)

    augmented = []
    for r, rt in enumerate(rooted):
        aug = line_tree(rt.tree, lmap)
        for e in sorted(p.s1):
            aug = apply_operation_A(aug, e, r, rooted, corr_edges, lmap)
        for e in sorted(p.s2):
            aug = apply_operation_B(aug, e, rt, p, lmap)
        augmented.append(aug)

    trees = tuple(
        spanning_tree(aug.base, lmap.edge_to_vertex(min(rt.tree.edges))).tree
        for aug, rt in zip(augmented, rooted)
    )
    s_l = frozenset(lmap.edge_to_vertex(e) for e in s_g)
    report = verify_internally_disjoint(lmap.line_graph, trees, s_l)
    if report and any(t.degree(v) != 1 for aug, t in zip(augmented, trees) for v in aug.added_terminals):
        report = VerificationReport(False, "added-terminal-not-leaf")
    if not report:
        raise VerificationFailed(
            f"construction failed verification: {report.reason}",
            {
                "vertex_count": g.vertex_count,
                "edges": [list(e) for e in g.edges],
                "edge_set": list(s_g),
                "packing": [t.sorted_edges() for t in packing.trees],
                "report": report.reason,
                "pair": list(report.pair) if report.pair else None,
            },
        )
    return Replay(p, q, root, rooted, corr_edges, tuple(augmented), trees, s_l, report)


def transform(g: Graph, s_g: Iterable[int], packing: PackingWitness, lmap: LineGraphMap | None = None) -> list[Subgraph]:
    return list(replay(g, s_g, packing, lmap).trees)


@dataclass(frozen=True)
class SubsetOutcome:
    edge_set: tuple[int, ...]
    case: Case
    classes: tuple[ComponentClass, ...]
    q_size: int
    packing_count: int
    tree_count: int
    verified: bool
    error: str | None = None


@dataclass(frozen=True)
class TheoremReport:
    k: int
    lambda_k: int
    kappa_line: int
    outcomes: tuple[SubsetOutcome, ...]

    @property
    def holds(self) -> bool:
        return self.kappa_line >= self.lambda_k

    @property
    def sharp(self) -> bool:
        return self.kappa_line == self.lambda_k

    @property
    def failures(self) -> list[SubsetOutcome]:
        return [o for o in self.outcomes if not o.verified]

    @property
    def ok(self) -> bool:
        return self.holds and not self.failures


def theorem_check(
    g: Graph,
    k: int,
    limits: Limits = DEFAULT_LIMITS,
    lambda_k: int | None = None,
    kappa_line: int | None = None,
) -> TheoremReport:
    """Replay the construction for every k-subset of edges and compare both sides.

    ``lambda_k`` / ``kappa_line`` may be supplied when already known (say, for an
    isomorphic graph); otherwise they are computed with the exact oracle.
    """
    _check_hypotheses(g, k)
    lmap = line_graph(g)
    if lambda_k is None:
        lambda_k = tree_connectivity(g, k, Mode.EDGE, limits).value
    if kappa_line is None:
        kappa_line = tree_connectivity(lmap.line_graph, k, Mode.INTERNAL, limits).value

    packings: dict[frozenset[int], PackingWitness] = {}
    outcomes = []
    for subset in itertools.combinations(range(g.edge_count), k):
        p = partition_terminal_edges(g, subset)
        q = terminal_vertex_set(p)
        if q not in packings:
            packings[q] = max_disjoint_packing(g, q, Mode.EDGE, limits)
        full = packings[q]
        base = dict(edge_set=subset, case=p.case, classes=p.component_classes, q_size=len(q),
                    packing_count=full.count)
        if full.count < lambda_k:
            outcomes.append(SubsetOutcome(**base, tree_count=0, verified=False,
                                          error=f"Q-packing {full.count} below lambda_k {lambda_k}"))
            continue
        seed = PackingWitness(full.terminals, full.mode, full.trees[:lambda_k])
        try:
            trees = transform(g, subset, seed, lmap)
        except VerificationFailed as exc:
            outcomes.append(SubsetOutcome(**base, tree_count=0, verified=False, error=str(exc)))
            continue
        ok = len(trees) == lambda_k
        outcomes.append(SubsetOutcome(**base, tree_count=len(trees), verified=ok,
                                      error=None if ok else "wrong tree count"))
    return TheoremReport(k, lambda_k, kappa_line, tuple(outcomes))
