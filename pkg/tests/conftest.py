from __future__ import annotations

import itertools
import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

from steinerpack.corpus import complete, cycle, path
from steinerpack.graph import Graph, build_graph

sys.path.insert(0, str(Path(__file__).parent))


@st.composite
def connected_graphs(draw, min_n: int = 2, max_n: int = 6, max_edges: int | None = None) -> Graph:
    """A random spanning tree plus random extra edges, then shuffled edge ids."""
    n = draw(st.integers(min_n, max_n))
    pairs = set()
    for v in range(1, n):
        u = draw(st.integers(0, v - 1))
        pairs.add((u, v))
    others = [p for p in itertools.combinations(range(n), 2) if p not in pairs]
    room = len(others) if max_edges is None else max(0, min(len(others), max_edges - len(pairs)))
    extra = draw(st.lists(st.sampled_from(others), max_size=room, unique=True)) if others and room else []
    pairs = list(pairs) + extra
    pairs = draw(st.permutations(pairs))
    flip = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return build_graph(n, [(v, u) if f else (u, v) for (u, v), f in zip(pairs, flip)])


@pytest.fixture
def k4() -> Graph:
    return complete(4)


@pytest.fixture
def c5() -> Graph:
    return cycle(5)


@pytest.fixture
def p3() -> Graph:
    return path(3)


def plain(g: Graph) -> tuple[int, list[tuple[int, int]]]:
    return g.vertex_count, list(g.edges)
