import random
from fractions import Fraction as F

import pytest

from mlpoly.exactlp import (
    LinearInequality,
    Polyhedron,
    Var,
    is_feasible_point,
    polyhedron_equal,
    project,
    solve_lp,
)
from mlpoly.hull import enumerate_facets_bruteforce


def unit_box(*names):
    vars_ = tuple(Var.node(i) for i in names)
    cons = []
    for v in vars_:
        cons.append(LinearInequality({v: 1}, ">=", 0))
        cons.append(LinearInequality({v: 1}, "<=", 1))
    return Polyhedron(vars_, cons, frozenset(vars_))


def mccormick_single_edge():
    u, v, e = Var.node(1), Var.node(2), Var.edge([1, 2])
    return Polyhedron(
        (u, v, e),
        [
            LinearInequality({e: 1}, ">=", 0),
            LinearInequality({e: 1, u: -1, v: -1}, ">=", -1),
            LinearInequality({e: 1, u: -1}, "<=", 0),
            LinearInequality({e: 1, v: -1}, "<=", 0),
        ],
        frozenset((u, v, e)),
    )


def test_var_names_and_parsing():
    assert Var.node(3).name == "zv3"
    assert Var.edge([2, 1, 4]).name == "ze1_2_4"
    assert Var.parse("ze1_2_4") == Var.edge([1, 2, 4])
    assert Var.parse("zv7") == Var.node(7)
    assert Var.parse("zxu_ze1_2") == Var.aux("u_ze1_2")


def test_solve_box():
    box = unit_box(1)
    out = solve_lp(box, {Var.node(1): F(1)}, "max")
    assert out.value == 1 and out.point[Var.node(1)] == 1


def test_solve_min_and_duals():
    p = mccormick_single_edge()
    out = solve_lp(p, {Var.node(1): F(1), Var.node(2): F(1), Var.edge([1, 2]): F(-1)}, "max")
    assert out.value == 1
    out = solve_lp(p, {Var.edge([1, 2]): F(1)}, "min")
    assert out.value == 0
    # fractional data exercises the scaling paths
    out = solve_lp(p, {Var.node(1): F(2, 3), Var.node(2): F(1, 5)}, "max")
    assert out.value == F(13, 15)


def test_solve_statuses():
    u = Var.node(1)
    empty = Polyhedron((u,), [LinearInequality({u: 1}, "<=", 0), LinearInequality({u: 1}, ">=", 1)])
    assert solve_lp(empty, {u: F(1)}, "min").status == "infeasible"
    ray = Polyhedron((u,), [LinearInequality({u: 1}, ">=", 0)])
    assert solve_lp(ray, {u: F(1)}, "max").status == "unbounded"
    assert solve_lp(ray, {u: F(1)}, "min").value == 0


def test_solve_equalities_and_redundant_rows():
    u, v = Var.node(1), Var.node(2)
    p = Polyhedron(
        (u, v),
        [
            LinearInequality({u: 1, v: 1}, "==", F(3, 7)),
            LinearInequality({u: 2, v: 2}, "==", F(6, 7)),  # dependent duplicate
            LinearInequality({u: 1}, ">=", 0),
            LinearInequality({v: 1}, ">=", 0),
        ],
    )
    out = solve_lp(p, {u: F(1)}, "max")
    assert out.value == F(3, 7)


def test_solve_deterministic():
    p = mccormick_single_edge()
    obj = {Var.node(1): F(1), Var.edge([1, 2]): F(-1)}
    a = solve_lp(p, obj, "max")
    b = solve_lp(p, obj, "max")
    assert a.value == b.value and a.point == b.point


def test_objective_outside_space_rejected():
    with pytest.raises(ValueError):
        solve_lp(unit_box(1), {Var.node(9): F(1)}, "max")


def test_feasible_point_reports_first_violation():
    p = mccormick_single_edge()
    u, v, e = p.space
    good = {u: F(1, 2), v: F(1, 2), e: F(0)}
    assert is_feasible_point(p, good) == (True, None)
    bad = {u: F(1, 2), v: F(1, 2), e: F(3, 4)}
    ok, violated = is_feasible_point(p, bad)
    assert not ok
    assert violated is p.constraints[2]  # z_e <= z_u comes first in order
    with pytest.raises(ValueError):
        is_feasible_point(p, {u: F(1)})


def test_project_mccormick_gives_unit_box():
    # by-hand elimination: the pairings give exactly the box constraints
    p = mccormick_single_edge()
    u, v, e = p.space
    proj = project(p, {e})
    assert proj.space == (u, v)
    assert proj.constraint_keys() == unit_box(1, 2).constraint_keys()


def test_project_nothing_is_identity():
    p = mccormick_single_edge()
    proj = project(p, set())
    assert proj.constraint_keys() == p.constraint_keys()
    assert proj.space == p.space


def test_project_equality_substitution():
    u, v = Var.node(1), Var.node(2)
    p = Polyhedron(
        (u, v),
        [
            LinearInequality({u: 1, v: 1}, "==", 1),
            LinearInequality({u: 1}, ">=", 0),
            LinearInequality({v: 1}, ">=", 0),
        ],
    )
    proj = project(p, {u})
    # substituting u = 1 - v leaves 0 <= v <= 1
    assert proj.constraint_keys() == unit_box(2).constraint_keys()


def test_project_soundness_sampled():
    rng = random.Random(3)
    p = mccormick_single_edge()
    u, v, e = p.space
    proj = project(p, {e})
    for _ in range(40):
        pt = {u: F(rng.randint(-4, 8), 4), v: F(rng.randint(-4, 8), 4)}
        inside_proj = is_feasible_point(proj, pt)[0]
        # lifting check: the point extends to the full system iff it is
        # in the projection
        lifted = Polyhedron(
            p.space,
            list(p.constraints)
            + [LinearInequality({u: 1}, "==", pt[u]), LinearInequality({v: 1}, "==", pt[v])],
        )
        liftable = solve_lp(lifted, {e: F(1)}, "max").status == "optimal"
        assert inside_proj == liftable


def test_polyhedron_equal_and_separator():
    box = unit_box(1, 2)
    assert polyhedron_equal(box, box) == (True, None)
    u, v = box.space
    cut = Polyhedron(
        box.space,
        list(box.constraints) + [LinearInequality({u: 1, v: 1}, "<=", F(3, 2))],
        box.original_vars,
    )
    equal, separator = polyhedron_equal(box, cut)
    assert not equal
    assert separator is not None
    # the separator is valid for one polyhedron and violated by the other
    assert solve_lp(box, separator.coeffs, "max").value > separator.rhs
    with pytest.raises(ValueError):
        polyhedron_equal(box, unit_box(1, 3))


def test_hull_unit_square():
    pts = [{Var.node(1): F(a), Var.node(2): F(b)} for a in (0, 1) for b in (0, 1)]
    facets = enumerate_facets_bruteforce(pts, (Var.node(1), Var.node(2)))
    assert len(facets) == 4
    assert {f.key() for f in facets} == unit_box(1, 2).constraint_keys()


def test_hull_single_edge_products():
    u, v, e = Var.node(1), Var.node(2), Var.edge([1, 2])
    pts = [{u: F(a), v: F(b), e: F(a * b)} for a in (0, 1) for b in (0, 1)]
    facets = enumerate_facets_bruteforce(pts, (u, v, e))
    assert {f.key() for f in facets} == mccormick_single_edge().constraint_keys()


def test_hull_triangle_contains_triangle_inequalities():
    from mlpoly.cuts import padberg_triangle
    from mlpoly.fixtures import build
    from mlpoly.relaxations import mp_space, mp_vertices

    tri = build("triangle")
    pts = [bp.as_dict() for bp in mp_vertices(tri)]
    facets = {f.key() for f in enumerate_facets_bruteforce(pts, mp_space(tri))}
    for ineq in padberg_triangle(1, 2, 3):
        assert ineq.key() in facets


def test_hull_facets_irredundant():
    u, v, e = Var.node(1), Var.node(2), Var.edge([1, 2])
    pts = [{u: F(a), v: F(b), e: F(a * b)} for a in (0, 1) for b in (0, 1)]
    facets = enumerate_facets_bruteforce(pts, (u, v, e))
    for i, facet in enumerate(facets):
        rest = Polyhedron((u, v, e), facets[:i] + facets[i + 1 :])
        out = solve_lp(rest, facet.coeffs, "max")
        assert out.status == "unbounded" or out.value > facet.rhs


def test_hull_rejects_degenerate_points():
    u, v = Var.node(1), Var.node(2)
    flat = [{u: F(0), v: F(0)}, {u: F(1), v: F(1)}, {u: F(2), v: F(2)}]
    with pytest.raises(ValueError):
        enumerate_facets_bruteforce(flat, (u, v))


def test_format_round_trip_is_bit_exact():
    p = mccormick_single_edge()
    text = p.format()
    again = Polyhedron.parse(text)
    assert again.format() == text
    assert again.constraint_keys() == p.constraint_keys()
    assert again.space == p.space


def test_inequality_normalization():
    u, v = Var.node(1), Var.node(2)
    ineq = LinearInequality({u: F(2, 3), v: F(-1, 6)}, "<=", F(1, 2))
    norm = ineq.normalized()
    assert norm.coeffs == {u: 4, v: -1} and norm.rhs == 3
    eq = LinearInequality({u: F(-2), v: F(4)}, "==", F(-6))
    norm = eq.normalized()
    assert norm.coeffs == {u: 1, v: -2} and norm.rhs == 3
    # >= keys match the negated <= form
    a = LinearInequality({u: 1}, ">=", 2)
    b = LinearInequality({u: -1}, "<=", -2)
    assert a.key() == b.key()
