"""Hypergraph surgeries and the affine maps they induce on polytopes.

Node fixing restricts to a face (a node variable pinned to 1), node
contraction identifies two node variables, node expansion replaces a
node by a cluster of fresh nodes tied together through a new edge, and
switching flips a subset of the binary node values.  Each surgery comes
with the bookkeeping the polytope-level statements need: the face
restriction, the variable lists to project out, and variable renamings.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .exactlp import AffineExpr, LinearInequality, Polyhedron, Var
from .hypergraph import Edge, Hypergraph, completion, is_closed
from .relaxations import standard_linearization

__all__ = [
    "FaceRestriction",
    "AffineMap",
    "NodeFixing",
    "fix_node",
    "contract",
    "contraction_eliminated_vars",
    "expand",
    "switching_map",
    "apply_to_inequality",
    "apply_to_point",
    "expansion_formulation",
]


@dataclass(frozen=True)
class FaceRestriction:
    """Equality pins that cut a face out of a polytope: variable = constant
    or variable = variable."""

    pins: tuple[LinearInequality, ...]

    @staticmethod
    def fix(var: Var, value) -> "FaceRestriction":
        return FaceRestriction((LinearInequality({var: 1}, "==", value),))

    @staticmethod
    def identify(a: Var, b: Var) -> "FaceRestriction":
        return FaceRestriction((LinearInequality({a: 1, b: -1}, "==", 0),))

    def applied_to(self, poly: Polyhedron) -> Polyhedron:
        return Polyhedron(poly.space, list(poly.constraints) + list(self.pins), poly.original_vars)


@dataclass
class NodeFixing:
    """Result of fixing a node to 1: the restricted hypergraph plus the
    exact projection data for both the original and the extended space."""

    hypergraph: Hypergraph
    pin: FaceRestriction
    origin: dict[Edge, Edge]  # surviving edge -> smallest originating edge
    dropped_nodes: tuple[int, ...]
    eliminate_original: tuple[Var, ...]  # for the polytope over V | E
    eliminate_extended: tuple[Var, ...]  # for the relaxation over V | cl(E)


def fix_node(g: Hypergraph, v: int) -> NodeFixing:
    """Restrict g to V minus {v}, pinning the node variable to 1.

    In the original space the variables projected out are the node itself
    and every edge that is not the designated origin of a surviving edge;
    in the extended space they are the node and every closure edge
    containing it.
    """
    from .hypergraph import induced_subhypergraph

    if v not in g.nodes:
        raise ValueError(f"{v} is not a node of the hypergraph")
    keep = set(g.nodes) - {v}
    sub, origin, dropped = induced_subhypergraph(g, keep)

    origins = set(origin.values())
    elim_orig = [Var.node(v)] + [Var.node(u) for u in dropped]
    elim_orig += [Var.edge(e) for e in g.edges if e not in origins]
    closed = completion(g)
    elim_ext = [Var.node(v)] + [Var.node(u) for u in dropped]
    elim_ext += [Var.edge(f) for f in closed.edges if v in f]
    return NodeFixing(
        hypergraph=sub,
        pin=FaceRestriction.fix(Var.node(v), 1),
        origin=origin,
        dropped_nodes=dropped,
        eliminate_original=tuple(elim_orig),
        eliminate_extended=tuple(elim_ext),
    )


def contract(g: Hypergraph, w: int, u: int) -> tuple[Hypergraph, FaceRestriction]:
    """Merge node w into node u; they must share an edge.

    Edges avoiding w survive unchanged; edges through w are renamed with
    u in place of w, except the bare pair {u, w}, which collapses and is
    dropped.  The matching face restriction pins z_w = z_u.
    """
    if u == w:
        raise ValueError("cannot contract a node to itself")
    if not any({u, w} <= set(e) for e in g.edges):
        raise ValueError(f"nodes {w} and {u} share no edge")
    pair = tuple(sorted((u, w)))
    edges = []
    for e in g.edges:
        if w not in e:
            edges.append(e)
        elif e != pair:
            edges.append(tuple(sorted((set(e) - {w}) | {u})))
    nodes = set(g.nodes) - {w}
    covered = {v for e in edges for v in e}
    return (
        Hypergraph(covered, edges),
        FaceRestriction.identify(Var.node(w), Var.node(u)),
    )


def contraction_eliminated_vars(
    g: Hypergraph, w: int, u: int, closed: bool = False
) -> tuple[tuple[Var, ...], dict[Var, Var]]:
    """Projection bookkeeping for a contraction.

    Returns the variables to project out of the (closed) edge space --
    z_w, the bare pair, and every edge through w whose renamed twin
    already exists -- together with the renaming of the surviving edges
    through w onto their contracted names.
    """
    h = completion(g) if closed else g
    edge_set = h.edge_set()
    pair = tuple(sorted((u, w)))
    eliminated = [Var.node(w)]
    rename: dict[Var, Var] = {}
    for e in h.edges:
        if w not in e:
            continue
        if e == pair:
            eliminated.append(Var.edge(e))
            continue
        twin = tuple(sorted((set(e) - {w}) | {u}))
        if twin in edge_set:
            eliminated.append(Var.edge(e))
        else:
            rename[Var.edge(e)] = Var.for_subset(twin)
    return tuple(eliminated), rename


def expand(g: Hypergraph, w: int, cluster) -> Hypergraph:
    """Replace node w by a cluster of fresh nodes joined by a new edge.

    The cluster itself becomes an edge, edges avoiding w survive, and
    every edge through w has w replaced by the whole cluster.  Clusters
    of size one would create an illegal single-node edge, so they are
    rejected.
    """
    f = tuple(sorted(set(cluster)))
    if len(f) < 2:
        raise ValueError("expansion cluster needs at least two fresh nodes")
    if set(f) & set(g.nodes):
        raise ValueError("expansion cluster must be disjoint from the node set")
    if w not in g.nodes:
        raise ValueError(f"{w} is not a node of the hypergraph")
    edges = [f]
    for e in g.edges:
        if w not in e:
            edges.append(e)
        else:
            edges.append(tuple(sorted((set(e) - {w}) | set(f))))
    nodes = (set(g.nodes) - {w}) | set(f)
    return Hypergraph(nodes, edges)


# ---------------------------------------------------------------------------
# Switching.


@dataclass(frozen=True)
class AffineMap:
    """An affine substitution: each variable of the space maps to an
    affine expression over the same space."""

    space: tuple[Var, ...]
    images: dict[Var, AffineExpr] = field(compare=False)

    def image_of(self, var: Var) -> AffineExpr:
        return self.images[var]


def switching_map(g: Hypergraph, flipped) -> AffineMap:
    """The affine automorphism induced by flipping the nodes in `flipped`.

    Defined over the space of a closed hypergraph (g must equal its
    completion): a flipped node variable maps to its complement, and an
    edge variable maps to the signed sum over the subsets of its flipped
    part, with the empty subset contributing a constant.
    """
    if not is_closed(g):
        raise ValueError("switching needs a closed hypergraph (g must equal its completion)")
    flipped = set(flipped)
    if not flipped <= set(g.nodes):
        raise ValueError("flipped set must be a subset of the nodes")
    space = tuple([Var.node(v) for v in g.nodes] + [Var.edge(e) for e in g.edges])
    images: dict[Var, AffineExpr] = {}
    for v in g.nodes:
        var = Var.node(v)
        if v in flipped:
            images[var] = AffineExpr(1, {var: -1})
        else:
            images[var] = AffineExpr(0, {var: 1})
    for e in g.edges:
        inter = tuple(sorted(set(e) & flipped))
        base = tuple(sorted(set(e) - flipped))
        expr = AffineExpr()
        for k in range(len(inter) + 1):
            for wsub in combinations(inter, k):
                sign = -1 if k % 2 else 1
                members = tuple(sorted(base + wsub))
                if members:
                    expr.add_term(Var.for_subset(members), sign)
                else:
                    expr.const += sign
        images[Var.edge(e)] = expr
    return AffineMap(space, images)


def apply_to_inequality(amap: AffineMap, ineq: LinearInequality) -> LinearInequality:
    """Substitute the map into the inequality and collect terms."""
    extra = ineq.variables() - set(amap.space)
    if extra:
        raise ValueError(f"inequality uses variables outside the map's space: {sorted(extra)}")
    expr = AffineExpr()
    for v, c in ineq.coeffs.items():
        expr = expr + amap.image_of(v).scaled(c)
    return LinearInequality(expr.coeffs, ineq.sense, ineq.rhs - expr.const).normalized()


def apply_to_point(amap: AffineMap, point: dict[Var, Fraction]) -> dict[Var, Fraction]:
    return {v: amap.image_of(v).evaluate(point) for v in amap.space}


# ---------------------------------------------------------------------------
# Expansion at the polytope level.


def expansion_formulation(
    g: Hypergraph, w: int, cluster, base: Polyhedron
) -> tuple[Hypergraph, Polyhedron]:
    """Lift an extended formulation of the multilinear polytope of g to
    one for the hypergraph with w expanded into the cluster.

    The original variables of `base` are renamed -- the node variable of
    w becomes the new cluster edge's variable, edges through w pick up
    the cluster -- extension variables survive as tagged auxiliaries,
    and the standard linearization of the cluster edge is glued on.
    """
    expanded = expand(g, w, cluster)
    f = tuple(sorted(set(cluster)))

    rename: dict[Var, Var] = {Var.node(w): Var.edge(f)}
    for v in g.nodes:
        if v != w:
            rename[Var.node(v)] = Var.node(v)
    for e in g.edges:
        if w in e:
            rename[Var.edge(e)] = Var.edge(tuple(sorted((set(e) - {w}) | set(f))))
        else:
            rename[Var.edge(e)] = Var.edge(e)
    for var in base.space:
        if var not in rename:
            rename[var] = Var.aux("u_" + var.name)

    def r(con: LinearInequality) -> LinearInequality:
        return LinearInequality({rename[v]: c for v, c in con.coeffs.items()}, con.sense, con.rhs)

    cluster_rows = standard_linearization(Hypergraph(f, [f]))

    new_original = frozenset(
        [Var.node(v) for v in expanded.nodes] + [Var.edge(e) for e in expanded.edges]
    )
    space = sorted(
        {rename[v] for v in base.space} | set(cluster_rows.space) | new_original,
        key=lambda v: v.sort_key,
    )
    rows = [r(c) for c in base.constraints] + list(cluster_rows.constraints)
    return expanded, Polyhedron(tuple(space), rows, new_original)
