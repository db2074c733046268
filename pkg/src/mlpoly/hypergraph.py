"""Hypergraphs and the set algebra performed on them.

A hypergraph is a finite node set together with a family of edges, each
edge a set of at least two nodes.  Every node must lie in at least one
edge.  All operations here are pure: they return new hypergraphs and
never mutate their inputs.
"""

from __future__ import annotations

import json
from itertools import combinations

__all__ = [
    "Edge",
    "Hypergraph",
    "completion",
    "maximal_edges",
    "induced_subhypergraph",
    "section_hypergraph",
    "is_complete",
]

# Edges are canonically sorted tuples of node labels.
Edge = tuple[int, ...]


def as_edge(nodes) -> Edge:
    """Canonicalize an iterable of node labels into an edge."""
    e = tuple(sorted(set(nodes)))
    if len(e) < 2:
        raise ValueError(f"an edge needs at least two nodes, got {e}")
    return e


def edge_sort_key(e: Edge) -> tuple:
    return (len(e), e)


class Hypergraph:
    """Immutable hypergraph over integer node labels.

    Nodes and edges are exposed as sorted tuples so that everything
    downstream (variable spaces, file output, search orders) is
    deterministic.
    """

    __slots__ = ("nodes", "edges")

    def __init__(self, nodes, edges):
        node_set = set(nodes)
        edge_list = sorted({as_edge(e) for e in edges}, key=edge_sort_key)
        covered = set()
        for e in edge_list:
            if not set(e) <= node_set:
                raise ValueError(f"edge {e} uses nodes outside {sorted(node_set)}")
            covered.update(e)
        uncovered = node_set - covered
        if uncovered:
            raise ValueError(f"nodes {sorted(uncovered)} lie in no edge")
        object.__setattr__(self, "nodes", tuple(sorted(node_set)))
        object.__setattr__(self, "edges", tuple(edge_list))

    def __setattr__(self, name, value):
        raise AttributeError("Hypergraph is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, Hypergraph)
            and self.nodes == other.nodes
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.nodes, self.edges))

    def __repr__(self):
        return f"Hypergraph(nodes={list(self.nodes)}, edges={[list(e) for e in self.edges]})"

    @property
    def rank(self) -> int:
        return max((len(e) for e in self.edges), default=0)

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def has_edge(self, e) -> bool:
        return tuple(sorted(set(e))) in self.edge_set()

    def is_graph(self) -> bool:
        return self.rank == 2

    def canonicalize(self) -> tuple["Hypergraph", dict[int, int]]:
        """Relabel nodes densely as 0..n-1; returns (hypergraph, old->new map)."""
        relabel = {v: i for i, v in enumerate(self.nodes)}
        edges = [tuple(relabel[v] for v in e) for e in self.edges]
        return Hypergraph(range(len(self.nodes)), edges), relabel

    # -- JSON text format ------------------------------------------------

    def to_json(self) -> str:
        payload = {"nodes": list(self.nodes), "edges": [list(e) for e in self.edges]}
        return json.dumps(payload, separators=(", ", ": ")) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Hypergraph":
        payload = json.loads(text)
        return cls(payload["nodes"], payload["edges"])


def completion(g: Hypergraph) -> Hypergraph:
    """All subsets of size >= 2 of edges of g, as a hypergraph."""
    closed = set()
    for e in g.edges:
        for k in range(2, len(e) + 1):
            closed.update(combinations(e, k))
    return Hypergraph(g.nodes, closed)


def is_closed(g: Hypergraph) -> bool:
    return g == completion(g)


def maximal_edges(g: Hypergraph) -> tuple[Edge, ...]:
    """Edges not strictly contained in any other edge, in canonical order."""
    out = []
    for e in g.edges:
        se = set(e)
        if not any(se < set(f) for f in g.edges):
            out.append(e)
    return tuple(out)


def induced_subhypergraph(
    g: Hypergraph, keep
) -> tuple[Hypergraph, dict[Edge, Edge], tuple[int, ...]]:
    """Restrict g to a node subset, intersecting every edge with it.

    Edges that shrink below two nodes disappear; nodes left in no edge
    are dropped as well.  Returns the restricted hypergraph, a map from
    each surviving edge to the lexicographically smallest edge of g it
    came from, and the tuple of dropped nodes.
    """
    keep = set(keep)
    if not keep <= set(g.nodes):
        raise ValueError(f"{sorted(keep)} is not a subset of the node set")
    origin: dict[Edge, Edge] = {}
    for e in g.edges:
        cut = tuple(sorted(set(e) & keep))
        if len(cut) < 2:
            continue
        if cut not in origin or e < origin[cut]:
            origin[cut] = e
    covered = set()
    for e in origin:
        covered.update(e)
    dropped = tuple(sorted(keep - covered))
    if not origin:
        raise ValueError("restriction leaves no edge of size >= 2")
    return Hypergraph(covered, origin.keys()), origin, dropped


def section_hypergraph(g: Hypergraph, keep) -> Hypergraph:
    """Keep only the edges of g that lie entirely inside the node subset."""
    keep = set(keep)
    if not keep <= set(g.nodes):
        raise ValueError(f"{sorted(keep)} is not a subset of the node set")
    edges = [e for e in g.edges if set(e) <= keep]
    covered = set()
    for e in edges:
        covered.update(e)
    return Hypergraph(covered, edges)


def is_complete(g: Hypergraph) -> bool:
    """True iff the edge set is every subset of the nodes of size >= 2."""
    n = len(g.nodes)
    # edges are distinct size >= 2 subsets of the nodes, so counting suffices
    return len(g.edges) == 2**n - n - 1
