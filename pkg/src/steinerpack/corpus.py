"""Graph corpora for sweeps: exhaustive labeled graphs, seeded random graphs, cycles."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator

from .graph import Graph, build_graph


@dataclass(frozen=True)
class Instance:
    source: str
    index: int
    graph: Graph


def cycle(n: int) -> Graph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return build_graph(n, list(itertools.combinations(range(n), 2)))


def path(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def _connected(n: int, pairs: list[tuple[int, int]]) -> bool:
    if n <= 1:
        return True
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    parts = n
    for u, v in pairs:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            parts -= 1
    return parts == 1


def labeled_connected_graphs(n: int, max_edges: int | None = None) -> Iterator[Graph]:
    """All connected graphs on vertices 0..n-1, in order of their edge bitmask."""
    slots = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(slots)):
        pairs = [slots[i] for i in range(len(slots)) if (mask >> i) & 1]
        if max_edges is not None and len(pairs) > max_edges:
            continue
        if _connected(n, pairs):
            yield build_graph(n, pairs)


def exhaustive(max_n: int, max_edges: int | None = None, min_n: int = 2) -> Iterator[Instance]:
    index = 0
    for n in range(min_n, max_n + 1):
        for g in labeled_connected_graphs(n, max_edges):
            yield Instance("exhaustive", index, g)
            index += 1


def random_connected_graph(
    rng: random.Random, n: int, p: float, max_edges: int | None = None, min_edges: int = 0
) -> Graph:
    """G(n, p) conditioned on connectivity (and the edge bounds) by rejection."""
    slots = list(itertools.combinations(range(n), 2))
    if n > 1 and (p <= 0 or (max_edges is not None and max_edges < n - 1)):
        raise ValueError(f"no connected graph with n={n}, p={p}, max_edges={max_edges}")
    while True:
        pairs = [e for e in slots if rng.random() < p]
        if max_edges is not None and len(pairs) > max_edges:
            continue
        if len(pairs) < min_edges:
            continue
        if _connected(n, pairs):
            return build_graph(n, pairs)


def random_corpus(
    seed: int,
    trials: int,
    n_range: tuple[int, int],
    p: float,
    max_edges: int | None = None,
    min_edges: int = 0,
) -> Iterator[Instance]:
    """Instance i is drawn from its own generator seeded by (seed, i), so it replays alone."""
    lo, hi = n_range
    for i in range(trials):
        rng = random.Random(f"{seed}:{i}")
        n = rng.randint(lo, hi)
        yield Instance("random", i, random_connected_graph(rng, n, p, max_edges, min_edges))


def canonical_key(g: Graph) -> tuple:
    """Smallest relabelled edge list over all vertex permutations (isomorphism invariant)."""
    best = None
    for perm in itertools.permutations(range(g.vertex_count)):
        key = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in g.edges))
        if best is None or key < best:
            best = key
    return (g.vertex_count, best)
