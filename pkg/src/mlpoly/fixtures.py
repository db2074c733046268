"""Named hypergraph families used by the CLI generator and the
verification harness.

Every builder is deterministic; `random` takes an explicit seed so runs
are reproducible.  Node labels follow the conventional 1-based pictures
of the small instances.
"""

from __future__ import annotations

import random
from itertools import combinations

from .hypergraph import Hypergraph
from .verify import almost_full_hypergraph

__all__ = ["build", "family_names", "random_hypergraph", "FIXTURES"]


def _cycle_graph(n: int) -> Hypergraph:
    if n < 3:
        raise ValueError("a cycle needs at least three nodes")
    nodes = range(1, n + 1)
    edges = [(i, i % n + 1) for i in nodes]
    return Hypergraph(nodes, edges)


def _path_graph(n: int) -> Hypergraph:
    if n < 2:
        raise ValueError("a path needs at least two nodes")
    return Hypergraph(range(1, n + 1), [(i, i + 1) for i in range(1, n)])


def _complete(n: int) -> Hypergraph:
    if n < 2:
        raise ValueError("a complete hypergraph needs at least two nodes")
    nodes = range(1, n + 1)
    edges = [c for k in range(2, n + 1) for c in combinations(nodes, k)]
    return Hypergraph(nodes, edges)


def _single_edge(n: int) -> Hypergraph:
    if n < 2:
        raise ValueError("an edge needs at least two nodes")
    return Hypergraph(range(1, n + 1), [tuple(range(1, n + 1))])


def _apex_triples() -> Hypergraph:
    # three triples through a common apex node; its closure hosts the
    # canonical length-3 alpha-cycle of rank three
    return Hypergraph([1, 2, 3, 4], [[1, 2, 4], [2, 3, 4], [1, 3, 4]])


def _covered_triangle() -> Hypergraph:
    # a triangle plus the covering triple: the triple absorbs every
    # candidate cycle, so the hypergraph is alpha-acyclic
    return Hypergraph([1, 2, 3], [[1, 2], [2, 3], [1, 3], [1, 2, 3]])


def _shortcut_hex() -> Hypergraph:
    # a six-cycle plus the edge {1,3,5}: the hexagon is an alpha-cycle
    # but not simple, and a length-3 simple cycle runs through the chord
    g = _cycle_graph(6)
    return Hypergraph(g.nodes, list(g.edges) + [(1, 3, 5)])


def _chorded_square() -> Hypergraph:
    # a four-edge simple cycle satisfying the chordless consequence on
    # nonadjacent intersections, yet shortened by the chord {1,3,6}
    return Hypergraph(
        range(1, 9),
        [[1, 2, 8], [2, 3, 7], [3, 4, 5, 7], [1, 5, 6, 8], [1, 3, 6]],
    )


def _path_hyper() -> Hypergraph:
    return Hypergraph([1, 2, 3, 4], [[1, 2, 3], [3, 4]])


def _two_triples() -> Hypergraph:
    return Hypergraph([1, 2, 3, 4], [[1, 2, 3], [2, 3, 4]])


def _star(n: int = 4) -> Hypergraph:
    return Hypergraph(range(1, n + 1), [(1, i) for i in range(2, n + 1)])


def _laminar() -> Hypergraph:
    return Hypergraph([1, 2, 3, 4], [[1, 2, 3, 4], [1, 2], [3, 4]])


def _disjoint_pairs() -> Hypergraph:
    return Hypergraph([1, 2, 3, 4], [[1, 2], [3, 4]])


def random_hypergraph(rng: random.Random, max_nodes: int = 6, max_edges: int = 6) -> Hypergraph:
    """A random covered hypergraph: sizes uniform in [2, min(5, |V|)],
    distinct edges, resampled until every node lies in an edge."""
    while True:
        n = rng.randint(2, max_nodes)
        m = rng.randint(1, max_edges)
        nodes = list(range(1, n + 1))
        edges = set()
        for _ in range(4 * m):
            size = rng.randint(2, min(5, n))
            edges.add(tuple(sorted(rng.sample(nodes, size))))
            if len(edges) == m:
                break
        if len(edges) < m:
            continue
        if set(nodes) == {v for e in edges for v in e}:
            return Hypergraph(nodes, edges)


FIXTURES = {
    "triangle": lambda: _cycle_graph(3),
    "square": lambda: _cycle_graph(4),
    "pentagon": lambda: _cycle_graph(5),
    "cycle": _cycle_graph,
    "path": _path_graph,
    "path-hyper": _path_hyper,
    "two-triples": _two_triples,
    "star": _star,
    "laminar": _laminar,
    "disjoint-pairs": _disjoint_pairs,
    "edge": _single_edge,
    "complete": _complete,
    "almostfull": almost_full_hypergraph,
    "apex-triples": _apex_triples,
    "example-524": _apex_triples,
    "covered-triangle": _covered_triangle,
    "shortcut-hex": _shortcut_hex,
    "chorded-square": _chorded_square,
}

_NEEDS_PARAM = {"cycle", "path", "edge", "complete", "almostfull"}
_OPTIONAL_PARAM = {"star"}


def family_names() -> list[str]:
    return sorted(FIXTURES) + ["random"]


def build(name: str, param: int | None = None, seed: int = 0) -> Hypergraph:
    """Instantiate a named family; `param` is the size where one applies."""
    if name == "random":
        return random_hypergraph(random.Random(seed))
    if name not in FIXTURES:
        raise ValueError(f"unknown family {name!r}; known: {', '.join(family_names())}")
    builder = FIXTURES[name]
    if name in _NEEDS_PARAM:
        if param is None:
            raise ValueError(f"family {name!r} needs a size parameter")
        return builder(param)
    if name in _OPTIONAL_PARAM and param is not None:
        return builder(param)
    if param is not None and name not in _OPTIONAL_PARAM:
        raise ValueError(f"family {name!r} takes no size parameter")
    return builder()
