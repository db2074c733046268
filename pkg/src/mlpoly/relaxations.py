"""Builders for the polytopes and relaxations over a hypergraph.

The feasible binary points are characteristic vectors: a node variable
is 1 when the node is chosen, an edge variable is 1 when the whole edge
is chosen.  The multilinear polytope is the convex hull of those points;
the builders here produce its standard relaxations:

* standard linearization: per-edge convex hull rows plus node bounds;
* unsigned RLT rows psi(U, e) >= 0 describing the multilinear polytope
  of a complete hypergraph exactly;
* complete edge relaxation: the RLT rows of every maximal edge, glued
  together over the variable space of the completion.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .exactlp import AffineExpr, LinearInequality, Polyhedron, SizeLimitExceeded, Var
from .hypergraph import Hypergraph, completion, maximal_edges

__all__ = [
    "BinaryPoint",
    "PsiExpression",
    "psi",
    "characteristic_vector",
    "enumerate_multilinear_points",
    "mp_space",
    "mp_vertices",
    "standard_linearization",
    "mccormick",
    "rlt_complete_polytope",
    "complete_edge_relaxation",
]


@dataclass(frozen=True)
class BinaryPoint:
    """Characteristic vector of a node subset, lifted to edge variables."""

    subset: frozenset[int]
    vector: tuple[tuple[Var, Fraction], ...]

    def as_dict(self) -> dict[Var, Fraction]:
        return dict(self.vector)


def characteristic_vector(subset, space) -> dict[Var, Fraction]:
    chosen = set(subset)
    point = {}
    for var in space:
        if var.kind == "node":
            point[var] = Fraction(1 if var.key[0] in chosen else 0)
        elif var.kind == "edge":
            point[var] = Fraction(1 if set(var.key) <= chosen else 0)
        else:
            raise ValueError(f"no characteristic value for auxiliary variable {var}")
    return point


def mp_space(g: Hypergraph, closed: bool = False) -> tuple[Var, ...]:
    """Node variables followed by edge variables (of cl(G) when closed)."""
    h = completion(g) if closed else g
    return tuple(
        [Var.node(v) for v in g.nodes] + [Var.edge(e) for e in h.edges]
    )


def enumerate_multilinear_points(g: Hypergraph, space=None) -> list[BinaryPoint]:
    """All 2^|V| characteristic vectors over the given space."""
    if len(g.nodes) > 20:
        raise SizeLimitExceeded(f"{len(g.nodes)} nodes: refusing 2^|V| enumeration")
    if space is None:
        space = mp_space(g)
    points = []
    nodes = list(g.nodes)
    for mask in range(2 ** len(nodes)):
        chosen = frozenset(v for i, v in enumerate(nodes) if mask >> i & 1)
        vec = characteristic_vector(chosen, space)
        points.append(BinaryPoint(chosen, tuple(vec.items())))
    return points


def mp_vertices(g: Hypergraph) -> list[BinaryPoint]:
    """Vertices of the multilinear polytope (every binary point is one)."""
    if len(g.nodes) > 12:
        raise SizeLimitExceeded(f"{len(g.nodes)} nodes exceeds the vertex guard of 12")
    return enumerate_multilinear_points(g)


@dataclass(frozen=True)
class PsiExpression:
    """The signed subset-sum functional of an edge, linearized.

    For U inside e it expands to sum over W of (-1)^|W| times the
    variable of (e \\ U) | W; the empty set contributes the constant 1.
    Nonnegativity of these expressions over all U describes the
    multilinear polytope of the complete hypergraph on e.
    """

    subset: tuple[int, ...]
    edge: tuple[int, ...]
    expr: AffineExpr

    def row(self) -> LinearInequality:
        return self.expr.nonnegative()


def psi(subset, edge) -> PsiExpression:
    u = tuple(sorted(subset))
    e = tuple(sorted(edge))
    if not set(u) <= set(e):
        raise ValueError(f"{u} is not a subset of the edge {e}")
    base = tuple(sorted(set(e) - set(u)))
    expr = AffineExpr()
    for k in range(len(u) + 1):
        for w in combinations(u, k):
            sign = -1 if k % 2 else 1
            members = tuple(sorted(base + w))
            if members:
                expr.add_term(Var.for_subset(members), sign)
            else:
                expr.const += sign
    return PsiExpression(u, e, expr)


def standard_linearization(g: Hypergraph) -> Polyhedron:
    """Per-edge hull rows plus node upper bounds: |V| + sum(|e|+2) constraints."""
    space = mp_space(g)
    cons = [LinearInequality({Var.node(v): 1}, "<=", 1) for v in g.nodes]
    cons.extend(_edge_hull_rows(g))
    return Polyhedron(space, cons, frozenset(space))


def mccormick(g: Hypergraph) -> Polyhedron:
    """The per-edge rows alone (for a graph, the McCormick relaxation)."""
    space = mp_space(g)
    return Polyhedron(space, _edge_hull_rows(g), frozenset(space))


def _edge_hull_rows(g: Hypergraph) -> list[LinearInequality]:
    rows = []
    for e in g.edges:
        ze = Var.edge(e)
        rows.append(LinearInequality({ze: 1}, ">=", 0))
        coeffs = {Var.node(v): -1 for v in e}
        coeffs[ze] = 1
        rows.append(LinearInequality(coeffs, ">=", 1 - len(e)))
        for v in e:
            rows.append(LinearInequality({ze: 1, Var.node(v): -1}, "<=", 0))
    return rows


def rlt_complete_polytope(edge) -> Polyhedron:
    """Exact description of the multilinear polytope of the complete
    hypergraph on the given node set: one psi row per subset."""
    e = tuple(sorted(edge))
    if len(e) > 16:
        raise SizeLimitExceeded(f"edge of size {len(e)} exceeds the RLT guard of 16")
    space = tuple(
        [Var.node(v) for v in e]
        + [Var.edge(s) for k in range(2, len(e) + 1) for s in combinations(e, k)]
    )
    rows = []
    for k in range(len(e) + 1):
        for u in combinations(e, k):
            rows.append(psi(u, e).row())
    return Polyhedron(space, rows, frozenset(space))


def complete_edge_relaxation(g: Hypergraph) -> Polyhedron:
    """RLT rows of every maximal edge over the closure variable space.

    Duplicate rows arising from overlapping maximal edges are removed;
    the original variables are those of g itself, everything else is
    extension plumbing.
    """
    if g.rank > 16:
        raise SizeLimitExceeded(f"rank {g.rank} exceeds the relaxation guard of 16")
    space = mp_space(g, closed=True)
    original = frozenset([Var.node(v) for v in g.nodes] + [Var.edge(e) for e in g.edges])
    seen, rows = set(), []
    for e in maximal_edges(g):
        for k in range(len(e) + 1):
            for u in combinations(e, k):
                row = psi(u, e).row()
                key = row.key()
                if key not in seen:
                    seen.add(key)
                    rows.append(row)
    poly = Polyhedron(space, rows, original)
    mentioned = {v for row in rows for v in row.coeffs}
    if mentioned != set(space):
        raise AssertionError("some closure variable appears in no relaxation row")
    return poly
