"""Triangle-style cutting planes for length-3 cycles and their certificates.

For a graph triangle these are Padberg's four triangle inequalities; for
an alpha-cycle of three hypergraph edges they generalize with the edge
variables and the pairwise-intersection variables taking the node roles.
Each inequality can be certified four ways:

* validity: it holds at every binary point of the support hypergraph;
* facet: its tight binary points affinely span a hyperplane;
* cg: rounding is enough -- the exact LP optimum over the relaxation
  stays below rhs + 1;
* aggregation: an explicit list of relaxation rows whose exact sum is
  the doubled inequality, reproducing the rounding argument.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .exactlp import AffineExpr, LinearInequality, Polyhedron, SizeLimitExceeded, Var, solve_lp
from .hull import affine_rank
from .hypergraph import Edge, Hypergraph, is_closed
from .relaxations import (
    complete_edge_relaxation,
    enumerate_multilinear_points,
    mp_space,
    psi,
)
from .acyclicity import CycleCandidate, is_alpha_cycle
from .transforms import apply_to_inequality, switching_map

__all__ = [
    "TriangleCycle",
    "normalize_triangle_cycle",
    "support_hypergraph",
    "padberg_triangle",
    "generalized_triangle",
    "switching_orbit",
    "CgResult",
    "check_cg_cut",
    "AggregationCertificate",
    "gtri_aggregation_certificate",
    "ValidityCertificate",
    "validity_certificate",
    "FacetCertificate",
    "facet_certificate",
]


@dataclass(frozen=True)
class TriangleCycle:
    """A length-3 alpha-cycle whose edges cover each other pairwise:
    no edge has nodes outside the union of the other two."""

    e1: Edge
    e2: Edge
    e3: Edge

    @property
    def edges(self) -> tuple[Edge, Edge, Edge]:
        return (self.e1, self.e2, self.e3)

    def intersection(self, i: int, j: int) -> tuple[int, ...]:
        a, b = self.edges[i - 1], self.edges[j - 1]
        return tuple(sorted(set(a) & set(b)))

    @property
    def common(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.e1) & set(self.e2) & set(self.e3)))


def _covers_pairwise(e1, e2, e3) -> bool:
    s1, s2, s3 = set(e1), set(e2), set(e3)
    return not (s1 - (s2 | s3)) and not (s2 - (s1 | s3)) and not (s3 - (s1 | s2))


def normalize_triangle_cycle(g: Hypergraph, e1, e2, e3) -> TriangleCycle:
    """Build a TriangleCycle, trimming each edge to the union of the
    other two when needed.

    The trimmed edges exist because g is closed, the pairwise
    intersections are unchanged, so the trimmed triple is again an
    alpha-cycle; this is asserted rather than assumed.
    """
    if not is_closed(g):
        raise ValueError("triangle cuts need a closed hypergraph")
    e1, e2, e3 = (tuple(sorted(set(e))) for e in (e1, e2, e3))
    cand = CycleCandidate((e1, e2, e3))
    if not is_alpha_cycle(g, cand):
        raise ValueError("the three edges do not form an alpha-cycle")
    if not _covers_pairwise(e1, e2, e3):
        s1, s2, s3 = set(e1), set(e2), set(e3)
        e1, e2, e3 = (
            tuple(sorted(s1 & (s2 | s3))),
            tuple(sorted(s2 & (s1 | s3))),
            tuple(sorted(s3 & (s1 | s2))),
        )
        trimmed = CycleCandidate((e1, e2, e3))
        if not is_alpha_cycle(g, trimmed):
            raise AssertionError("trimmed triple lost the alpha-cycle property")
    return TriangleCycle(e1, e2, e3)


def support_hypergraph(tc: TriangleCycle) -> Hypergraph:
    """All nodes of the cycle plus every subset of size >= 2 of each edge."""
    nodes = set(tc.e1) | set(tc.e2) | set(tc.e3)
    edges = set()
    for e in tc.edges:
        for k in range(2, len(e) + 1):
            edges.update(combinations(e, k))
    return Hypergraph(nodes, edges)


def padberg_triangle(u: int, v: int, w: int) -> list[LinearInequality]:
    """The four triangle inequalities on a graph 3-cycle."""
    if len({u, v, w}) < 3:
        raise ValueError("triangle nodes must be distinct")
    zu, zv, zw = Var.node(u), Var.node(v), Var.node(w)
    zuv, zuw, zvw = Var.edge((u, v)), Var.edge((u, w)), Var.edge((v, w))
    return [
        LinearInequality({zuv: 1, zuw: 1, zu: -1, zvw: -1}, "<=", 0),
        LinearInequality({zuv: 1, zvw: 1, zv: -1, zuw: -1}, "<=", 0),
        LinearInequality({zuw: 1, zvw: 1, zw: -1, zuv: -1}, "<=", 0),
        LinearInequality({zu: 1, zv: 1, zw: 1, zuv: -1, zuw: -1, zvw: -1}, "<=", 1),
    ]


def _subset_term(expr: AffineExpr, nodes, coefficient) -> None:
    if nodes:
        expr.add_term(Var.for_subset(nodes), coefficient)
    else:
        expr.const += coefficient


def generalized_triangle(tc: TriangleCycle) -> list[LinearInequality]:
    """The four cut inequalities of a length-3 alpha-cycle.

    On a graph triangle they specialize to the Padberg system, with the
    pairwise intersections shrinking to single nodes.  An empty triple
    intersection contributes the constant 1 instead of a variable.
    """
    ineqs = []
    for i, j, k in ((1, 2, 3), (1, 3, 2), (2, 3, 1)):
        expr = AffineExpr()
        _subset_term(expr, tc.edges[i - 1], 1)
        _subset_term(expr, tc.edges[j - 1], 1)
        _subset_term(expr, tc.intersection(i, j), -1)
        _subset_term(expr, tc.edges[k - 1], -1)
        ineqs.append(LinearInequality(expr.coeffs, "<=", -expr.const))
    expr = AffineExpr()
    _subset_term(expr, tc.intersection(1, 2), 1)
    _subset_term(expr, tc.intersection(1, 3), 1)
    _subset_term(expr, tc.intersection(2, 3), 1)
    for e in tc.edges:
        _subset_term(expr, e, -1)
    _subset_term(expr, tc.common, -1)
    ineqs.append(LinearInequality(expr.coeffs, "<=", -expr.const))
    return ineqs


def switching_orbit(g: Hypergraph, ineqs) -> list[LinearInequality]:
    """All switchings of the given inequalities, deduplicated.

    One affine map per node subset, so the node count is guarded.
    """
    if not is_closed(g):
        raise ValueError("switching needs a closed hypergraph")
    if len(g.nodes) > 12:
        raise SizeLimitExceeded(f"{len(g.nodes)} nodes: refusing 2^|V| switchings")
    out: dict[tuple, LinearInequality] = {}
    for r in range(len(g.nodes) + 1):
        for subset in combinations(g.nodes, r):
            amap = switching_map(g, subset)
            for ineq in ineqs:
                img = apply_to_inequality(amap, ineq)
                out.setdefault(img.key(), img)
    return [out[k] for k in sorted(out)]


# ---------------------------------------------------------------------------
# Certificates.


@dataclass
class CgResult:
    """Outcome of the rounding test max{a z : z in P} < rhs + 1."""

    is_cut: bool
    optimum: Fraction
    argmax: dict[Var, Fraction]
    inequality: LinearInequality

    def margin(self) -> Fraction:
        return self.optimum - self.inequality.rhs


def check_cg_cut(poly: Polyhedron, ineq: LinearInequality) -> CgResult:
    """Decide whether an integer inequality is a rank-1 rounding cut.

    The inequality must have integer coefficients and right-hand side
    and is interpreted in its <= orientation.  It is a cut exactly when
    the LP optimum of its normal over the polyhedron is below rhs + 1;
    otherwise the optimal point is the refutation witness.
    """
    if ineq.sense == "==":
        raise ValueError("rounding cuts are inequalities, not equalities")
    bad = [c for c in list(ineq.coeffs.values()) + [ineq.rhs] if c.denominator != 1]
    if bad:
        raise ValueError("rounding test needs integer coefficients and right-hand side")
    work = ineq if ineq.sense == "<=" else ineq.negated()
    out = solve_lp(poly, work.coeffs, "max")
    if out.status != "optimal":
        raise ValueError(f"rounding test needs a bounded nonempty polyhedron, got {out.status}")
    return CgResult(out.value < work.rhs + 1, out.value, out.point, work)


@dataclass
class ValidityCertificate:
    inequality: LinearInequality
    hypergraph: Hypergraph
    tight_subsets: tuple[frozenset[int], ...]

    def recheck(self) -> bool:
        space = mp_space(self.hypergraph)
        tights = []
        for bp in enumerate_multilinear_points(self.hypergraph, space):
            point = bp.as_dict()
            if not self.inequality.satisfied_by(point):
                return False
            lhs = self.inequality.evaluate(point)
            if self.inequality.sense != "==" and lhs == self.inequality.rhs:
                tights.append(bp.subset)
        return tuple(tights) == self.tight_subsets


def validity_certificate(g: Hypergraph, ineq: LinearInequality) -> ValidityCertificate:
    """Sweep all binary points; raises if the inequality is not valid."""
    space = mp_space(g)
    tights = []
    for bp in enumerate_multilinear_points(g, space):
        point = bp.as_dict()
        if not ineq.satisfied_by(point):
            raise ValueError(f"inequality violated at subset {sorted(bp.subset)}")
        if ineq.evaluate(point) == ineq.rhs:
            tights.append(bp.subset)
    return ValidityCertificate(ineq, g, tuple(tights))


@dataclass
class FacetCertificate:
    inequality: LinearInequality
    hypergraph: Hypergraph
    tight_rank: int
    space_dim: int

    @property
    def is_facet(self) -> bool:
        return self.tight_rank == self.space_dim - 1


def facet_certificate(g: Hypergraph, ineq: LinearInequality) -> FacetCertificate:
    """Affine rank of the tight binary points of the inequality over g."""
    space = mp_space(g)
    cert = validity_certificate(g, ineq)
    tight_vecs = [
        [Fraction(1 if (var.kind == "node" and var.key[0] in t) else 0)
         if var.kind == "node"
         else Fraction(1 if set(var.key) <= t else 0)
         for var in space]
        for t in cert.tight_subsets
    ]
    return FacetCertificate(ineq, g, affine_rank(tight_vecs), len(space))


@dataclass
class AggregationCertificate:
    """Rows of the complete edge relaxation (keyed by their psi subset
    and edge) that sum exactly to an aggregate, which rounds down to the
    target inequality."""

    rows: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]  # (subset, edge) keys
    aggregate: LinearInequality
    target: LinearInequality

    def recheck(self) -> bool:
        total = AffineExpr()
        for subset, edge in self.rows:
            total = total + psi(subset, edge).expr
        summed = total.nonnegative().normalized()
        if summed.key() != self.aggregate.normalized().key():
            return False
        # divide by two and round the bound: floor for <=, ceiling for >=
        agg = self.aggregate.normalized()
        half = {v: c / 2 for v, c in agg.coeffs.items()}
        if agg.sense == ">=":
            import math

            rounded = LinearInequality(half, ">=", math.ceil(agg.rhs / 2))
        else:
            import math

            rounded = LinearInequality(half, "<=", math.floor(agg.rhs / 2))
        return rounded.key() == self.target.key()


def gtri_aggregation_certificate(tc: TriangleCycle, which: int) -> AggregationCertificate:
    """Explicit multiplier-1 aggregation deriving one of the four cuts.

    For the first three cuts the rows follow the roles (a, b, c) where
    the target is z_a + z_b <= z_{a&b} + z_c; the fourth cut is obtained
    by pushing the first certificate through the switching that flips
    (e1 & e2) minus e3, which permutes the relaxation rows among
    themselves.
    """
    if which not in (1, 2, 3, 4):
        raise ValueError("which must be 1, 2, 3, or 4")
    targets = generalized_triangle(tc)
    if which == 4:
        return _switched_aggregation(tc, targets[3])
    roles = {1: (tc.e1, tc.e2, tc.e3), 2: (tc.e1, tc.e3, tc.e2), 3: (tc.e2, tc.e3, tc.e1)}
    a, b, c = roles[which]
    rows = _aggregation_rows(a, b, c)
    aggregate = _sum_rows(rows)
    cert = AggregationCertificate(tuple(rows), aggregate, targets[which - 1])
    if not cert.recheck():
        raise AssertionError("aggregation does not reproduce the target cut")
    return cert


def _aggregation_rows(a, b, c) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Row keys whose psi expressions sum to twice the (a, b, c) cut."""
    rows: list[tuple[tuple[int, ...], tuple[int, ...]]] = []

    def bridge(x, y):
        # rows summing to z_{x&y} - z_x over the relaxation of edge x
        diff = tuple(sorted(set(x) - set(y)))
        for k in range(len(diff)):
            for j in combinations(diff, k):
                rows.append((tuple(sorted(set(diff) - set(j))), tuple(sorted(x))))

    bridge(a, b)
    bridge(b, a)
    bridge(a, c)
    bridge(b, c)
    sa, sb, sc = set(a), set(b), set(c)
    for k in range(len(c) + 1):
        for j in combinations(tuple(sorted(sc)), k):
            js = set(j)
            if js >= (sa & sc) or js >= (sb & sc):
                continue
            rows.append((tuple(sorted(sc - js)), tuple(sorted(sc))))
    rows.append(((), tuple(sorted(sc))))  # the plain z_c >= 0 row
    return rows


def _sum_rows(rows) -> LinearInequality:
    total = AffineExpr()
    for subset, edge in rows:
        total = total + psi(subset, edge).expr
    return total.nonnegative().normalized()


def _switched_aggregation(tc: TriangleCycle, target: LinearInequality) -> AggregationCertificate:
    gc = support_hypergraph(tc)
    flip = tuple(sorted(set(tc.intersection(1, 2)) - set(tc.e3)))
    amap = switching_map(gc, flip)
    # identify each switched row as another relaxation row by expression key
    table: dict[tuple, tuple[tuple[int, ...], tuple[int, ...]]] = {}
    for e in tc.edges:
        for k in range(len(e) + 1):
            for u in combinations(e, k):
                table[psi(u, e).row().normalized().key()] = (u, tuple(e))
    base_rows = _aggregation_rows(tc.e1, tc.e2, tc.e3)
    switched_rows = []
    for subset, edge in base_rows:
        img = apply_to_inequality(amap, psi(subset, edge).row())
        key = img.normalized().key()
        if key not in table:
            raise AssertionError("switched row is not a relaxation row")
        switched_rows.append(table[key])
    aggregate = _sum_rows(switched_rows)
    cert = AggregationCertificate(tuple(switched_rows), aggregate, target)
    if not cert.recheck():
        raise AssertionError("switched aggregation does not reproduce the target cut")
    return cert
