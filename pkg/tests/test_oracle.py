from __future__ import annotations

import itertools

import networkx as nx
import pytest
from conftest import connected_graphs, plain
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import brute_connectivity, brute_packing, leaf_terminal_trees

from steinerpack.corpus import complete, cycle, path
from steinerpack.graph import Subgraph, build_graph, is_steiner_tree
from steinerpack.oracle import (
    Disconnected,
    KOutOfRange,
    Limits,
    Mode,
    NotSteinerTree,
    SameVertex,
    SizeLimitExceeded,
    TerminalMissing,
    edge_connectivity_flow,
    enumerate_minimal_steiner_trees,
    max_disjoint_packing,
    prune_to_terminal_leaves,
    tree_connectivity,
)


def _edges(g, *pairs):
    return {g.edge_id(u, v) for u, v in pairs}


# ----------------------------------------------------------------------
# pruning
# ----------------------------------------------------------------------

def test_prune_path_tail():
    g = path(4)
    out = prune_to_terminal_leaves(g.whole(), {0, 2})
    assert out.vertices == {0, 1, 2} and out.edges == _edges(g, (0, 1), (1, 2))


def test_prune_star_leaf():
    g = build_graph(4, [(0, 1), (0, 2), (0, 3)])
    out = prune_to_terminal_leaves(g.whole(), {1, 2})
    assert out.vertices == {0, 1, 2}


def test_prune_fixed_point():
    g = build_graph(4, [(0, 1), (0, 2), (0, 3)])
    assert prune_to_terminal_leaves(g.whole(), {1, 2, 3}) == g.whole()


def test_prune_rejects_non_steiner():
    with pytest.raises(NotSteinerTree):
        prune_to_terminal_leaves(cycle(4).whole(), {0, 2})


# ----------------------------------------------------------------------
# enumeration
# ----------------------------------------------------------------------

def test_enumerate_path():
    trees = list(enumerate_minimal_steiner_trees(path(3), {0, 2}))
    assert [t.sorted_edges() for t in trees] == [[0, 1]]


def test_enumerate_triangle():
    g = cycle(3)  # edges (0,1), (1,2), (2,0)
    trees = [t.sorted_edges() for t in enumerate_minimal_steiner_trees(g, {0, 1})]
    assert trees == [[0], [1, 2]]


def test_enumerate_c4_opposite():
    trees = list(enumerate_minimal_steiner_trees(cycle(4), {0, 2}))
    assert [t.sorted_edges() for t in trees] == [[0, 1], [2, 3]]


def test_enumerate_errors():
    with pytest.raises(Disconnected):
        list(enumerate_minimal_steiner_trees(build_graph(4, [(0, 1), (2, 3)]), {0, 1}))
    with pytest.raises(TerminalMissing):
        list(enumerate_minimal_steiner_trees(cycle(4), {0, 9}))
    with pytest.raises(TerminalMissing):
        list(enumerate_minimal_steiner_trees(cycle(4), {0}))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_enumeration_is_exactly_the_leaf_terminal_trees(data):
    g = data.draw(connected_graphs(max_n=6, max_edges=8))
    k = data.draw(st.integers(2, g.vertex_count))
    s = data.draw(st.sets(st.integers(0, g.vertex_count - 1), min_size=k, max_size=k))
    trees = list(enumerate_minimal_steiner_trees(g, s))
    keys = [t.sorted_edges() for t in trees]
    assert keys == sorted(keys)
    assert len(set(map(tuple, keys))) == len(keys)
    for t in trees:
        assert is_steiner_tree(g, t, s)
        assert t.leaves() <= s or len(t.vertices) == 1
    assert {frozenset(k) for k in keys} == leaf_terminal_trees(list(g.edges), s)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_every_steiner_tree_prunes_into_the_enumeration(data):
    g = data.draw(connected_graphs(max_n=6, max_edges=8))
    s = data.draw(st.sets(st.integers(0, g.vertex_count - 1), min_size=2, max_size=g.vertex_count))
    minimal = {frozenset(t.edges) for t in enumerate_minimal_steiner_trees(g, s)}
    for r in range(1, g.edge_count + 1):
        for combo in itertools.combinations(range(g.edge_count), r):
            t = Subgraph.from_edges(g, combo)
            if is_steiner_tree(g, t, s):
                assert frozenset(prune_to_terminal_leaves(t, s).edges) in minimal


# ----------------------------------------------------------------------
# packing
# ----------------------------------------------------------------------

@pytest.mark.parametrize("s", list(itertools.combinations(range(5), 3)))
def test_c5_three_terminals_edge(s):
    assert max_disjoint_packing(cycle(5), s, Mode.EDGE).count == 1


@pytest.mark.parametrize("mode", list(Mode))
def test_single_edge(mode):
    assert max_disjoint_packing(path(2), {0, 1}, mode).count == 1


def test_k4_three_terminals_edge():
    # brute force over all edge-disjoint tree families of K4 gives 2
    p = max_disjoint_packing(complete(4), {0, 1, 2}, Mode.EDGE)
    assert p.count == 2
    assert not (p.trees[0].edges & p.trees[1].edges)


def test_packing_limits():
    with pytest.raises(SizeLimitExceeded):
        max_disjoint_packing(complete(7), {0, 1}, Mode.EDGE)
    assert max_disjoint_packing(complete(7), {0, 1}, Mode.EDGE, Limits(12, 21, 9)).count == 6


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_packing_matches_brute_force(data):
    g = data.draw(connected_graphs(max_n=5, max_edges=7))
    s = data.draw(st.sets(st.integers(0, g.vertex_count - 1), min_size=2, max_size=g.vertex_count))
    for mode in Mode:
        p = max_disjoint_packing(g, s, mode)
        assert p.count == brute_packing(list(g.edges), s, mode is Mode.INTERNAL)
        for t in p.trees:
            assert is_steiner_tree(g, t, s)
        for a, b in itertools.combinations(p.trees, 2):
            assert not (a.edges & b.edges)
            if mode is Mode.INTERNAL:
                assert a.vertices & b.vertices == set(s)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_internal_never_beats_edge(data):
    g = data.draw(connected_graphs(max_n=7, max_edges=11))
    s = data.draw(st.sets(st.integers(0, g.vertex_count - 1), min_size=2, max_size=g.vertex_count))
    internal = max_disjoint_packing(g, s, Mode.INTERNAL).count
    assert internal <= max_disjoint_packing(g, s, Mode.EDGE).count


def test_packing_is_deterministic(k4):
    a = max_disjoint_packing(k4, {0, 1, 3}, Mode.INTERNAL)
    b = max_disjoint_packing(k4, {0, 1, 3}, Mode.INTERNAL)
    assert [t.sorted_edges() for t in a.trees] == [t.sorted_edges() for t in b.trees]


# ----------------------------------------------------------------------
# connectivity
# ----------------------------------------------------------------------

def test_c6_lambda2():
    assert tree_connectivity(cycle(6), 2, Mode.EDGE).value == 2


@pytest.mark.parametrize("g", [path(5), build_graph(5, [(0, 1), (0, 2), (0, 3), (3, 4)])])
def test_trees_have_lambda2_one(g):
    assert tree_connectivity(g, 2, Mode.EDGE).value == 1


def test_k4_kappa4_internal():
    assert tree_connectivity(complete(4), 4, Mode.INTERNAL).value == 2


def test_connectivity_witness_is_first_minimiser():
    g = build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
    res = tree_connectivity(g, 2, Mode.EDGE)
    assert res.value == 2
    assert res.witness_min_set == {0, 1}
    assert res.witness_packing.count == 2


def test_connectivity_errors():
    with pytest.raises(KOutOfRange):
        tree_connectivity(cycle(4), 5)
    with pytest.raises(KOutOfRange):
        tree_connectivity(cycle(4), 1)
    with pytest.raises(SizeLimitExceeded):
        tree_connectivity(cycle(10), 2)
    with pytest.raises(Disconnected):
        tree_connectivity(build_graph(4, [(0, 1), (2, 3)]), 2)


@settings(max_examples=40, deadline=None)
@given(connected_graphs(max_n=5, max_edges=7), st.sampled_from(list(Mode)))
def test_connectivity_matches_brute_force(g, mode):
    n, edges = plain(g)
    for k in range(2, n + 1):
        expected = brute_connectivity(n, edges, k, mode is Mode.INTERNAL)
        assert tree_connectivity(g, k, mode).value == expected


# ----------------------------------------------------------------------
# flow cross-check
# ----------------------------------------------------------------------

@pytest.mark.parametrize("u, v", list(itertools.combinations(range(5), 2)))
def test_flow_c5(u, v):
    assert edge_connectivity_flow(cycle(5), u, v) == 2


def test_flow_path_ends():
    assert edge_connectivity_flow(path(5), 0, 4) == 1


@pytest.mark.parametrize("u, v", list(itertools.combinations(range(4), 2)))
def test_flow_k4(u, v):
    assert edge_connectivity_flow(complete(4), u, v) == 3


def test_flow_same_vertex():
    with pytest.raises(SameVertex):
        edge_connectivity_flow(cycle(4), 1, 1)


@settings(max_examples=50, deadline=None)
@given(connected_graphs(max_n=8))
def test_flow_matches_networkx(g):
    h = nx.Graph(list(g.edges))
    h.add_nodes_from(range(g.vertex_count))
    for u, v in itertools.combinations(range(g.vertex_count), 2):
        assert edge_connectivity_flow(g, u, v) == nx.edge_connectivity(h, u, v)


@settings(max_examples=40, deadline=None)
@given(connected_graphs(min_n=3, max_n=7, max_edges=12))
def test_edge_connectivity_is_monotone_in_k(g):
    vals = [tree_connectivity(g, k, Mode.EDGE).value for k in range(2, g.vertex_count + 1)]
    assert vals == sorted(vals, reverse=True)


def test_internal_connectivity_is_not_monotone_in_k():
    # a 6-vertex counterexample, confirmed by the brute-force reference
    edges = [(0, 1), (0, 2), (0, 4), (0, 5), (1, 2), (1, 3), (1, 4), (3, 4), (4, 5)]
    g = build_graph(6, edges)
    vals = [tree_connectivity(g, k, Mode.INTERNAL).value for k in range(2, 7)]
    assert vals == [brute_connectivity(6, edges, k, True) for k in range(2, 7)] == [2, 1, 2, 2, 1]
