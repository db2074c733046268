import random
from fractions import Fraction as F
from itertools import combinations

import pytest

from mlpoly.exactlp import (
    LinearInequality,
    Polyhedron,
    Var,
    polyhedron_equal,
    project,
    solve_lp,
)
from mlpoly.fixtures import build
from mlpoly.hull import enumerate_facets_bruteforce
from mlpoly.hypergraph import Hypergraph, completion
from mlpoly.relaxations import (
    complete_edge_relaxation,
    characteristic_vector,
    enumerate_multilinear_points,
    mp_space,
    mp_vertices,
)
from mlpoly.transforms import (
    apply_to_inequality,
    apply_to_point,
    contract,
    contraction_eliminated_vars,
    expand,
    expansion_formulation,
    fix_node,
    switching_map,
)
from mlpoly.verify import binary_maximum

TRIANGLE = build("triangle")
COVERED = build("covered-triangle")
APEX = completion(build("apex-triples"))


# -- node fixing --------------------------------------------------------------


def test_fix_node_triangle():
    fixing = fix_node(TRIANGLE, 3)
    assert fixing.hypergraph == Hypergraph([1, 2], [[1, 2]])
    assert fixing.dropped_nodes == ()
    pin = fixing.pin.pins[0]
    assert pin.coeffs == {Var.node(3): 1} and pin.sense == "==" and pin.rhs == 1


def test_fix_node_covered_triangle():
    fixing = fix_node(COVERED, 3)
    assert fixing.hypergraph == Hypergraph([1, 2], [[1, 2]])
    # origin of the surviving pair is the pair itself (lexicographic rule)
    assert fixing.origin == {(1, 2): (1, 2)}
    assert set(fixing.eliminate_original) == {
        Var.node(3),
        Var.edge((1, 3)),
        Var.edge((2, 3)),
        Var.edge((1, 2, 3)),
    }
    assert set(fixing.eliminate_extended) == set(fixing.eliminate_original)


def test_fix_node_degenerate_rejected():
    g = Hypergraph([1, 2], [[1, 2]])
    with pytest.raises(ValueError):
        fix_node(g, 1)
    with pytest.raises(ValueError):
        fix_node(g, 9)


def test_fix_node_restriction_of_vertices():
    # face of the polytope at z_v = 1 projects onto the polytope of the
    # restricted hypergraph: compare hull facets on both sides
    for g, v in ((COVERED, 3), (build("path-hyper"), 4), (build("two-triples"), 1)):
        fixing = fix_node(g, v)
        sub = fixing.hypergraph
        keep = [var for var in mp_space(g) if var not in set(fixing.eliminate_original)]
        rename = {Var.edge(orig): Var.for_subset(e) for e, orig in fixing.origin.items()}
        projected = []
        for bp in enumerate_multilinear_points(g):
            point = bp.as_dict()
            if point[Var.node(v)] != 1:
                continue
            projected.append({rename.get(var, var): point[var] for var in keep})

        space = mp_space(sub)
        got = {f.key() for f in enumerate_facets_bruteforce(projected, space)}
        want = {
            f.key()
            for f in enumerate_facets_bruteforce([bp.as_dict() for bp in mp_vertices(sub)], space)
        }
        assert got == want


def _fixing_projection_equal(g, v):
    fixing = fix_node(g, v)
    cer = complete_edge_relaxation(g)
    restricted = fixing.pin.applied_to(cer)
    projected = project(restricted, set(fixing.eliminate_extended))
    target = complete_edge_relaxation(fixing.hypergraph)
    assert set(projected.space) == set(target.space)
    equal, separator = polyhedron_equal(projected, target)
    return equal, separator, len(fixing.eliminate_extended)


def test_fixing_commutes_with_relaxation():
    for g, v in ((COVERED, 3), (TRIANGLE, 3), (completion(Hypergraph([1, 2, 3], [[1, 2, 3]])), 3)):
        equal, separator, n_elim = _fixing_projection_equal(g, v)
        assert equal, f"separated by {separator and separator.format()}"
        assert n_elim <= 6


# -- contraction --------------------------------------------------------------


def test_contract_triangle():
    out, pin = contract(TRIANGLE, 3, 1)
    assert out == Hypergraph([1, 2], [[1, 2]])
    assert pin.pins[0].key() == LinearInequality({Var.node(3): 1, Var.node(1): -1}, "==", 0).key()


def test_contract_triple_edge():
    g = Hypergraph([1, 2, 3], [[1, 2, 3]])
    out, _ = contract(g, 3, 1)
    assert out == Hypergraph([1, 2], [[1, 2]])


def test_contract_merges_duplicates():
    g = Hypergraph([1, 2, 3], [[1, 2], [2, 3], [1, 3]])
    out, _ = contract(g, 3, 1)
    assert out.edges == ((1, 2),)


def test_contract_preconditions():
    g = Hypergraph([1, 2, 3, 4], [[1, 2], [3, 4]])
    with pytest.raises(ValueError):
        contract(g, 1, 3)  # no common edge
    with pytest.raises(ValueError):
        contract(g, 1, 1)


def test_contraction_projection_inclusion():
    # the relaxation of the contracted hypergraph sits inside the
    # projection of the pinned relaxation (one-sided inclusion)
    cases = [
        (TRIANGLE, 3, 1),
        (COVERED, 3, 2),
        (build("path-hyper"), 4, 3),
        (APEX, 4, 1),
    ]
    for g, w, u in cases:
        closed = completion(g)
        contracted, pin = contract(closed, w, u)
        eliminated, rename = contraction_eliminated_vars(closed, w, u, closed=True)
        cer_small = complete_edge_relaxation(contracted)

        pinned = pin.applied_to(complete_edge_relaxation(closed))
        projected = project(pinned, set(eliminated))
        renamed_rows = [
            LinearInequality(
                {rename.get(v, v): c for v, c in con.coeffs.items()}, con.sense, con.rhs
            )
            for con in projected.constraints
        ]
        space = tuple(rename.get(v, v) for v in projected.space)
        assert set(space) == set(cer_small.space)
        target = Polyhedron(space, renamed_rows)
        for con in target.constraints:
            for coeffs, bound in con.as_leq():
                out = solve_lp(cer_small, coeffs, "max")
                assert out.is_optimal and out.value <= bound


# -- expansion ----------------------------------------------------------------


def test_expand_single_edge():
    g = Hypergraph([1, 2], [[1, 2]])
    out = expand(g, 2, [3, 4])
    assert out == Hypergraph([1, 3, 4], [[3, 4], [1, 3, 4]])


def test_expand_triangle():
    out = expand(TRIANGLE, 3, [4, 5])
    assert set(out.edges) == {(1, 2), (4, 5), (2, 4, 5), (1, 4, 5)}


def test_expand_preconditions():
    g = Hypergraph([1, 2], [[1, 2]])
    with pytest.raises(ValueError):
        expand(g, 2, [3])  # singleton cluster would be an illegal edge
    with pytest.raises(ValueError):
        expand(g, 2, [2, 3])  # not disjoint
    with pytest.raises(ValueError):
        expand(g, 9, [3, 4])


def test_expansion_formulation_objective_sweep():
    rng = random.Random(17)
    cases = [
        (Hypergraph([1, 2], [[1, 2]]), 2, (3, 4)),
        (build("path", 3), 2, (4, 5)),
        (build("path-hyper"), 3, (5, 6)),
    ]
    for g, w, cluster in cases:
        expanded, formulation = expansion_formulation(g, w, cluster, complete_edge_relaxation(g))
        original = sorted(formulation.original_vars, key=lambda v: v.sort_key)
        for _ in range(40):
            obj = {v: F(rng.randint(-5, 5)) for v in original}
            lp = solve_lp(formulation, obj, "max")
            assert lp.value == binary_maximum(expanded, obj)


# -- switching ----------------------------------------------------------------


def test_switching_empty_set_is_identity():
    amap = switching_map(APEX, ())
    for var in amap.space:
        assert amap.image_of(var).coeffs == {var: 1}
        assert amap.image_of(var).const == 0


def test_switching_requires_closed_hypergraph():
    with pytest.raises(ValueError):
        switching_map(build("apex-triples"), {4})
    with pytest.raises(ValueError):
        switching_map(APEX, {9})


def test_switching_edge_image_from_worked_example():
    amap = switching_map(APEX, {4})
    img = amap.image_of(Var.edge((1, 2, 4)))
    assert img.const == 0
    assert img.coeffs == {Var.edge((1, 2)): 1, Var.edge((1, 2, 4)): -1}


def test_switching_binary_action_small_spaces():
    for g in (TRIANGLE, APEX):
        space = mp_space(g)
        for r in range(len(g.nodes) + 1):
            for u in combinations(g.nodes, r):
                amap = switching_map(g, u)
                for t_size in range(len(g.nodes) + 1):
                    for t in combinations(g.nodes, t_size):
                        got = apply_to_point(amap, characteristic_vector(t, space))
                        assert got == characteristic_vector(set(t) ^ set(u), space)


def test_switching_involution_on_inequalities():
    amap = switching_map(APEX, {2, 4})
    for ineq in complete_edge_relaxation(APEX).constraints[:8]:
        twice = apply_to_inequality(amap, apply_to_inequality(amap, ineq))
        assert twice.key() == ineq.key()


def test_switching_maps_triangle_inequalities_to_each_other():
    from mlpoly.cuts import padberg_triangle

    t1, t2, t3, t4 = padberg_triangle(1, 2, 3)
    # flipping the first node turns the first form into the node-sum form
    amap = switching_map(TRIANGLE, {1})
    assert apply_to_inequality(amap, t1).key() == t4.key()
    assert apply_to_inequality(amap, t4).key() == t1.key()


def test_switching_gtri_roles():
    from mlpoly.cuts import generalized_triangle, normalize_triangle_cycle

    tc = normalize_triangle_cycle(APEX, (1, 2, 4), (2, 3, 4), (1, 3, 4))
    g1, g2, g3, g4 = generalized_triangle(tc)
    flip = set(tc.e1) - set(tc.e2)
    amap = switching_map(APEX, flip)
    assert apply_to_inequality(amap, g1).key() == g3.key()


def test_switching_preserves_validity_iff():
    g = TRIANGLE
    space = mp_space(g)
    points = [characteristic_vector(t, space) for bp in [None] for t in _subsets(g.nodes)]
    candidates = [
        LinearInequality({Var.node(1): 1, Var.edge((1, 2)): -1}, "<=", 0),  # valid
        LinearInequality({Var.node(1): 1, Var.node(2): 1}, "<=", 1),  # invalid
        LinearInequality({Var.edge((1, 2)): 1, Var.edge((1, 3)): 1}, "<=", 1),  # valid
    ]
    for ineq in candidates:
        base_valid = all(ineq.satisfied_by(p) for p in points)
        for r in range(4):
            for u in combinations(g.nodes, r):
                switched = apply_to_inequality(switching_map(g, u), ineq)
                assert all(switched.satisfied_by(p) for p in points) == base_valid


def _subsets(nodes):
    for r in range(len(nodes) + 1):
        yield from combinations(nodes, r)


def test_switching_is_relaxation_automorphism():
    for g in (TRIANGLE, APEX):
        cer = complete_edge_relaxation(g)
        keys = cer.constraint_keys()
        for r in range(len(g.nodes) + 1):
            for u in combinations(g.nodes, r):
                amap = switching_map(g, u)
                image = {apply_to_inequality(amap, con).key() for con in cer.constraints}
                assert image == keys
