"""Brute-force facet enumeration for small full-dimensional point sets.

Every facet of a full-dimensional polytope in dimension d is the affine
hull of d affinely independent vertices, so enumerating all d-subsets of
the input points, solving for the hyperplane through each, and keeping
the supporting ones yields exactly the facet list.  Exponential, but the
polytopes this package cares about have at most a few thousand candidate
subsets; all linear algebra runs fraction-free over the integers.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb, gcd

from .exactlp import LinearInequality, SizeLimitExceeded, Var

__all__ = ["enumerate_facets_bruteforce", "affine_rank"]


def _bareiss_echelon(rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form; returns (matrix, pivot column list)."""
    m = [list(r) for r in rows]
    n_rows = len(m)
    n_cols = len(m[0]) if m else 0
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, n_rows):
            for j in range(c + 1, n_cols):
                m[i][j] = (m[i][j] * m[r][c] - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = m[r][c]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return m, pivots


def _kernel_vector(rows: list[list[int]], dim: int) -> list[int] | None:
    """A primitive integer kernel vector when the kernel is 1-dimensional."""
    ech, pivots = _bareiss_echelon(rows)
    if len(pivots) != dim - 1:
        return None
    free = next(c for c in range(dim) if c not in pivots)
    sol = [Fraction(0)] * dim
    sol[free] = Fraction(1)
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        s = sum((Fraction(ech[r][j]) * sol[j] for j in range(c + 1, dim)), Fraction(0))
        sol[c] = -s / ech[r][c]
    denom = 1
    for x in sol:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in sol]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints]


def affine_rank(points: list[list[Fraction]]) -> int:
    """Dimension of the affine hull spanned by the points."""
    if not points:
        return -1
    base = points[0]
    diffs = [[p[j] - base[j] for j in range(len(base))] for p in points[1:]]
    if not diffs:
        return 0
    denom = 1
    for row in diffs:
        for x in row:
            denom = denom * x.denominator // gcd(denom, x.denominator)
    int_rows = [[int(x * denom) for x in row] for row in diffs]
    _, pivots = _bareiss_echelon(int_rows)
    return len(pivots)


def enumerate_facets_bruteforce(
    points: list[dict[Var, Fraction]],
    space: tuple[Var, ...],
    dim_limit: int = 16,
) -> list[LinearInequality]:
    """Irredundant facet list of the convex hull of the given points.

    The points must affinely span their space (full-dimensional hull).
    Facets come back as <= inequalities with coprime integer data, in a
    deterministic order.
    """
    dim = len(space)
    if dim > dim_limit:
        raise SizeLimitExceeded(f"dimension {dim} exceeds the hull guard {dim_limit}")
    if len(points) < dim + 1:
        raise ValueError("not enough points to span a full-dimensional hull")

    vecs = [[Fraction(p[v]) for v in space] for p in points]
    if affine_rank(vecs) != dim:
        raise ValueError("points are not full-dimensional in their space")

    denom = 1
    for vec in vecs:
        for x in vec:
            denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [[int(x * denom) for x in vec] for vec in vecs]

    n = len(ints)
    if comb(n, dim) > 2_000_000:
        raise SizeLimitExceeded(f"{n} points in dimension {dim}: too many candidate subsets")

    facets: dict[tuple, LinearInequality] = {}
    for subset in combinations(range(n), dim):
        base = ints[subset[0]]
        diffs = [
            [ints[i][j] - base[j] for j in range(dim)]
            for i in subset[1:]
        ]
        normal = _kernel_vector(diffs, dim)
        if normal is None:
            continue
        level = sum(a * b for a, b in zip(normal, base))
        values = [sum(a * b for a, b in zip(normal, vec)) for vec in ints]
        hi, lo = max(values), min(values)
        if hi == level and lo < level:
            pass
        elif lo == level and hi > level:
            normal = [-a for a in normal]
            level = -level
        else:
            continue  # not a supporting hyperplane
        key = (tuple(normal), level)
        if key not in facets:
            coeffs = {v: Fraction(a) for v, a in zip(space, normal) if a}
            # undo the point scaling on the right-hand side
            facets[key] = LinearInequality(coeffs, "<=", Fraction(level, denom))
    return [facets[k] for k in sorted(facets)]
