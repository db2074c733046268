"""Exact rational linear programming kernel.

Everything here computes with fractions.Fraction: feasibility verdicts,
simplex optima, and Fourier-Motzkin projections are exact, so the rest
of the package can assert equalities with zero tolerance.

The simplex is a dense two-phase tableau with Bland's rule (exact
arithmetic needs no perturbation, and Bland is the simplest rule that
cannot cycle).  Every optimal solve is self-certifying: the returned
point is re-checked for feasibility and the dual multipliers are
re-checked to prove the bound, so a wrong answer raises instead of
propagating.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

__all__ = [
    "Var",
    "AffineExpr",
    "LinearInequality",
    "Polyhedron",
    "LpOutcome",
    "solve_lp",
    "is_feasible_point",
    "project",
    "polyhedron_equal",
    "SizeLimitExceeded",
]


class SizeLimitExceeded(ValueError):
    """An operation was refused because the instance exceeds its desk-scale guard."""


_KIND_ORDER = {"node": 0, "edge": 1, "aux": 2}


@dataclass(frozen=True)
class Var:
    """A variable of a polyhedron: a node value, an edge product, or an
    auxiliary coordinate identified by a string tag."""

    kind: str
    key: tuple

    @staticmethod
    def node(v: int) -> "Var":
        return Var("node", (int(v),))

    @staticmethod
    def edge(e) -> "Var":
        e = tuple(sorted(int(v) for v in e))
        if len(e) < 2:
            raise ValueError(f"edge variable needs >= 2 nodes, got {e}")
        return Var("edge", e)

    @staticmethod
    def aux(tag: str) -> "Var":
        return Var("aux", (str(tag),))

    @staticmethod
    def for_subset(nodes) -> "Var":
        """Node variable for singletons, edge variable otherwise."""
        nodes = tuple(sorted(nodes))
        if not nodes:
            raise ValueError("empty subset has no variable; fold it into the constant")
        return Var.node(nodes[0]) if len(nodes) == 1 else Var.edge(nodes)

    @property
    def sort_key(self) -> tuple:
        return (_KIND_ORDER[self.kind], len(self.key), self.key)

    def __lt__(self, other: "Var") -> bool:
        return self.sort_key < other.sort_key

    @property
    def name(self) -> str:
        if self.kind == "node":
            return f"zv{self.key[0]}"
        if self.kind == "edge":
            return "ze" + "_".join(str(v) for v in self.key)
        return "zx" + self.key[0]

    @staticmethod
    def parse(name: str) -> "Var":
        if name.startswith("zv"):
            return Var.node(int(name[2:]))
        if name.startswith("ze"):
            return Var.edge(int(p) for p in name[2:].split("_"))
        if name.startswith("zx"):
            return Var.aux(name[2:])
        raise ValueError(f"unparseable variable name {name!r}")

    def __repr__(self):
        return self.name


class AffineExpr:
    """A constant plus a rational linear combination of variables."""

    __slots__ = ("const", "coeffs")

    def __init__(self, const=0, coeffs=None):
        self.const = Fraction(const)
        self.coeffs: dict[Var, Fraction] = {}
        if coeffs:
            for v, c in coeffs.items():
                c = Fraction(c)
                if c:
                    self.coeffs[v] = c

    def copy(self) -> "AffineExpr":
        return AffineExpr(self.const, dict(self.coeffs))

    def add_term(self, v: Var, c) -> None:
        c = self.coeffs.get(v, Fraction(0)) + Fraction(c)
        if c:
            self.coeffs[v] = c
        else:
            self.coeffs.pop(v, None)

    def __add__(self, other: "AffineExpr") -> "AffineExpr":
        out = self.copy()
        out.const += other.const
        for v, c in other.coeffs.items():
            out.add_term(v, c)
        return out

    def __sub__(self, other: "AffineExpr") -> "AffineExpr":
        return self + other.scaled(-1)

    def scaled(self, factor) -> "AffineExpr":
        factor = Fraction(factor)
        return AffineExpr(self.const * factor, {v: c * factor for v, c in self.coeffs.items()})

    def evaluate(self, point: dict[Var, Fraction]) -> Fraction:
        return self.const + sum((c * point[v] for v, c in self.coeffs.items()), Fraction(0))

    def substitute(self, images: dict[Var, "AffineExpr"]) -> "AffineExpr":
        out = AffineExpr(self.const)
        for v, c in self.coeffs.items():
            img = images.get(v)
            if img is None:
                out.add_term(v, c)
            else:
                out.const += c * img.const
                for w, d in img.coeffs.items():
                    out.add_term(w, c * d)
        return out

    def nonnegative(self) -> "LinearInequality":
        """The inequality stating this expression is >= 0."""
        return LinearInequality(self.coeffs, ">=", -self.const)

    def __eq__(self, other):
        return (
            isinstance(other, AffineExpr)
            and self.const == other.const
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        terms = [f"{c} {v.name}" for v, c in sorted(self.coeffs.items(), key=lambda t: t[0].sort_key)]
        if self.const or not terms:
            terms.append(str(self.const))
        return " + ".join(terms)


_SENSES = ("<=", ">=", "==")


class LinearInequality:
    """A single exact constraint: rational combination of variables
    compared against a rational right-hand side."""

    __slots__ = ("coeffs", "sense", "rhs")

    def __init__(self, coeffs, sense: str, rhs):
        if sense == "=":
            sense = "=="
        if sense not in _SENSES:
            raise ValueError(f"sense must be one of {_SENSES}, got {sense!r}")
        self.coeffs: dict[Var, Fraction] = {}
        for v, c in dict(coeffs).items():
            c = Fraction(c)
            if c:
                self.coeffs[v] = c
        self.sense = sense
        self.rhs = Fraction(rhs)

    def variables(self):
        return set(self.coeffs)

    def evaluate(self, point: dict[Var, Fraction]) -> Fraction:
        return sum((c * point[v] for v, c in self.coeffs.items()), Fraction(0))

    def satisfied_by(self, point: dict[Var, Fraction]) -> bool:
        lhs = self.evaluate(point)
        if self.sense == "<=":
            return lhs <= self.rhs
        if self.sense == ">=":
            return lhs >= self.rhs
        return lhs == self.rhs

    def normalized(self) -> "LinearInequality":
        """Equivalent constraint with coprime integer data.

        The scale factor is positive, so the sense is preserved; an
        equality is additionally flipped so its first coefficient (in
        variable order) is positive.
        """
        items = sorted(self.coeffs.items(), key=lambda t: t[0].sort_key)
        denoms = [c.denominator for _, c in items] + [self.rhs.denominator]
        scale = 1
        for d in denoms:
            scale = scale * d // gcd(scale, d)
        ints = [c * scale for _, c in items]
        g = 0
        for c in ints:
            g = gcd(g, int(c))
        g = gcd(g, int(self.rhs * scale))
        if g:
            scale = Fraction(scale, g)
        coeffs = {v: c * scale for v, c in items}
        rhs = self.rhs * scale
        sense = self.sense
        if sense == "==" and items and coeffs[items[0][0]] < 0:
            coeffs = {v: -c for v, c in coeffs.items()}
            rhs = -rhs
        return LinearInequality(coeffs, sense, rhs)

    def key(self) -> tuple:
        """Canonical hashable form; >= constraints are keyed as <=."""
        norm = self.normalized()
        coeffs, sense, rhs = norm.coeffs, norm.sense, norm.rhs
        if sense == ">=":
            coeffs = {v: -c for v, c in coeffs.items()}
            rhs, sense = -rhs, "<="
        items = tuple(sorted(((v, c) for v, c in coeffs.items()), key=lambda t: t[0].sort_key))
        return (items, sense, rhs)

    def negated(self) -> "LinearInequality":
        flip = {"<=": ">=", ">=": "<=", "==": "=="}
        return LinearInequality({v: -c for v, c in self.coeffs.items()}, flip[self.sense], -self.rhs)

    def as_leq(self) -> list[tuple[dict, Fraction]]:
        """The constraint as a list of <= rows (two for an equality)."""
        if self.sense == "<=":
            return [(dict(self.coeffs), self.rhs)]
        if self.sense == ">=":
            return [({v: -c for v, c in self.coeffs.items()}, -self.rhs)]
        return [
            (dict(self.coeffs), self.rhs),
            ({v: -c for v, c in self.coeffs.items()}, -self.rhs),
        ]

    def __eq__(self, other):
        return isinstance(other, LinearInequality) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def format(self) -> str:
        items = sorted(self.coeffs.items(), key=lambda t: t[0].sort_key)
        if not items:
            lhs = "0"
        else:
            parts = []
            for i, (v, c) in enumerate(items):
                mag = abs(c)
                if i == 0:
                    parts.append(("-" if c < 0 else "") + f"{mag} {v.name}")
                else:
                    parts.append(("- " if c < 0 else "+ ") + f"{mag} {v.name}")
            lhs = " ".join(parts)
        sense = "=" if self.sense == "==" else self.sense
        return f"{lhs} {sense} {self.rhs}"

    __repr__ = format

    _TERM_RE = re.compile(r"([+-]?\s*\d+(?:/\d+)?)\s+(z[vex][\w]*)")

    @classmethod
    def parse(cls, line: str) -> "LinearInequality":
        m = re.search(r"(<=|>=|=)\s*(-?\d+(?:/\d+)?)\s*$", line)
        if not m:
            raise ValueError(f"unparseable constraint line {line!r}")
        sense, rhs = m.group(1), Fraction(m.group(2))
        coeffs: dict[Var, Fraction] = {}
        for raw_c, raw_v in cls._TERM_RE.findall(line[: m.start()]):
            c = Fraction(raw_c.replace(" ", ""))
            v = Var.parse(raw_v)
            coeffs[v] = coeffs.get(v, Fraction(0)) + c
        return cls(coeffs, sense, rhs)


@dataclass
class Polyhedron:
    """An ordered variable space, a constraint list, and the subset of
    variables regarded as original (the rest are extension variables)."""

    space: tuple[Var, ...]
    constraints: list[LinearInequality]
    original_vars: frozenset[Var] = field(default_factory=frozenset)

    def __post_init__(self):
        self.space = tuple(self.space)
        self.original_vars = frozenset(self.original_vars)
        spc = set(self.space)
        for con in self.constraints:
            extra = con.variables() - spc
            if extra:
                raise ValueError(f"constraint uses variables outside the space: {sorted(extra)}")
        if not self.original_vars <= spc:
            raise ValueError("original_vars must be a subset of the space")

    def unique_constraints(self) -> list[LinearInequality]:
        seen, out = set(), []
        for con in self.constraints:
            k = con.key()
            if k not in seen:
                seen.add(k)
                out.append(con)
        return out

    def constraint_keys(self) -> frozenset:
        return frozenset(c.key() for c in self.constraints)

    # -- LP-format text ----------------------------------------------------

    def format(self) -> str:
        lines = ["vars " + " ".join(v.name for v in self.space)]
        if self.original_vars:
            ordered = [v for v in self.space if v in self.original_vars]
            lines.append("original " + " ".join(v.name for v in ordered))
        lines.extend(con.normalized().format() for con in self.constraints)
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "Polyhedron":
        space: tuple[Var, ...] = ()
        original: frozenset[Var] = frozenset()
        cons = []
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("vars "):
                space = tuple(Var.parse(n) for n in line[5:].split())
            elif line.startswith("original "):
                original = frozenset(Var.parse(n) for n in line[9:].split())
            else:
                cons.append(LinearInequality.parse(line))
        return cls(space, cons, original)


@dataclass
class LpOutcome:
    """Result of an exact LP solve.

    For an optimal outcome, `point` attains `value` exactly and `dual`
    lists one multiplier per constraint certifying the bound in the
    maximization form of the problem.
    """

    status: str  # "optimal" | "unbounded" | "infeasible"
    value: Fraction | None = None
    point: dict[Var, Fraction] | None = None
    dual: list[Fraction] | None = None

    @property
    def is_optimal(self):
        return self.status == "optimal"


# ---------------------------------------------------------------------------
# Simplex.
#
# The tableau uses integer (Edmonds) pivoting: every entry is an integer
# subdeterminant of the input data and the whole tableau is implicitly
# divided by `scale`, the previous pivot element.  Python integers make
# this far faster than Fraction arithmetic, and every division in the
# pivot update is exact.


class _Tableau:
    """Dense integer simplex tableau with Bland pivoting throughout.

    Two cost rows ride along through every pivot so that phase two needs
    no re-reduction.  True entry values are entry / scale; `scale` keeps
    the sign of the basis determinant, so sign tests multiply through.
    """

    def __init__(self, rows: list[list[int]], basis: list[int], n_cols: int,
                 costs: list[list[int]]):
        self.rows = rows
        self.basis = basis
        self.n_cols = n_cols  # excludes rhs
        self.costs = costs
        self.scale = 1
        for cost in costs:
            for i, b in enumerate(basis):
                if cost[b]:
                    f = cost[b]
                    row = rows[i]
                    piv = row[b]  # +-1 in the initial identity columns
                    for j in range(n_cols + 1):
                        cost[j] = cost[j] * piv - f * row[j]
                    if piv < 0:
                        for j in range(n_cols + 1):
                            cost[j] = -cost[j]

    def pivot(self, r: int, c: int):
        piv_row = self.rows[r]
        piv = piv_row[c]
        scale = self.scale
        for i, row in enumerate(self.rows):
            if i != r:
                f = row[c]
                if f:
                    self.rows[i] = [
                        (x * piv - f * y) // scale for x, y in zip(row, piv_row)
                    ]
                else:
                    self.rows[i] = [(x * piv) // scale for x in row]
        for k, cost in enumerate(self.costs):
            f = cost[c]
            if f:
                self.costs[k] = [
                    (x * piv - f * y) // scale for x, y in zip(cost, piv_row)
                ]
            else:
                self.costs[k] = [(x * piv) // scale for x in cost]
        self.scale = piv
        self.basis[r] = c

    def run(self, cost_index: int, allowed: list[bool]) -> str:
        """Minimize the selected cost row; 'optimal' or 'unbounded'."""
        cost = self.costs[cost_index]
        while True:
            sgn = 1 if self.scale > 0 else -1
            enter = -1
            for j in range(self.n_cols):
                if allowed[j] and sgn * cost[j] < 0:
                    enter = j
                    break
            if enter < 0:
                return "optimal"
            leave = -1
            best_num = best_den = None
            for i, row in enumerate(self.rows):
                den = sgn * row[enter]
                if den > 0:
                    num = sgn * row[-1]
                    if (
                        leave < 0
                        or num * best_den < best_num * den
                        or (num * best_den == best_num * den and self.basis[i] < self.basis[leave])
                    ):
                        leave, best_num, best_den = i, num, den
            if leave < 0:
                return "unbounded"
            self.pivot(leave, enter)
            cost = self.costs[cost_index]

    def true_value(self, row: list[int], j: int) -> Fraction:
        return Fraction(row[j], self.scale)


def solve_lp(
    poly: Polyhedron, objective: dict[Var, Fraction], direction: str = "max"
) -> LpOutcome:
    """Exact simplex optimum of a rational objective over a polyhedron.

    Variables are unrestricted in sign (bounds must appear as explicit
    constraints).  The outcome point satisfies every constraint exactly;
    for optimal outcomes a dual certificate is verified internally before
    returning.
    """
    if direction not in ("max", "min"):
        raise ValueError("direction must be 'max' or 'min'")
    extra = set(objective) - set(poly.space)
    if extra:
        raise ValueError(f"objective uses variables outside the space: {sorted(extra)}")
    sign = 1 if direction == "max" else -1
    cvec = [sign * Fraction(objective.get(v, 0)) for v in poly.space]

    outcome = _solve_max(poly, cvec)
    if outcome.status == "optimal":
        _certify_optimal(poly, cvec, outcome)
        if direction == "min":
            outcome.value = -outcome.value
    return outcome


def _solve_max(poly: Polyhedron, cvec: list[Fraction]) -> LpOutcome:
    n = len(poly.space)
    var_index = {v: i for i, v in enumerate(poly.space)}

    rows_in: list[tuple[list[Fraction], str, Fraction]] = []
    for con in poly.constraints:
        a = [Fraction(0)] * n
        for v, c in con.coeffs.items():
            a[var_index[v]] = c
        rows_in.append((a, con.sense, con.rhs))

    m = len(rows_in)
    if m == 0:
        if any(cvec):
            return LpOutcome("unbounded")
        return LpOutcome("optimal", Fraction(0), {v: Fraction(0) for v in poly.space}, [])

    # columns: split variables (pos, neg per var), slacks, artificials
    n_split = 2 * n
    slack_of = {}
    n_slacks = 0
    for i, (_a, sense, _b) in enumerate(rows_in):
        if sense in ("<=", ">="):
            slack_of[i] = n_split + n_slacks
            n_slacks += 1
    art_of = {i: n_split + n_slacks + i for i in range(m)}
    n_cols = n_split + n_slacks + m

    # rows are scaled to integers; the slack absorbs the scale factor so
    # the initial basic columns stay at exactly +1
    rows: list[list[int]] = []
    basis: list[int] = []
    sigma: list[int] = []
    row_scale: list[int] = []
    for i, (a, sense, b) in enumerate(rows_in):
        s = -1 if b < 0 else 1
        sigma.append(s)
        k = 1
        for x in a + [b]:
            k = k * x.denominator // gcd(k, x.denominator)
        row_scale.append(k)
        row = [0] * (n_cols + 1)
        for j, aj in enumerate(a):
            e = int(s * k * aj)
            row[2 * j] = e
            row[2 * j + 1] = -e
        if sense == "<=":
            row[slack_of[i]] = s
        elif sense == ">=":
            row[slack_of[i]] = -s
        row[art_of[i]] = 1
        row[-1] = int(s * k * b)
        rows.append(row)
        if i in slack_of and row[slack_of[i]] > 0:
            basis.append(slack_of[i])
        else:
            basis.append(art_of[i])

    obj_scale = 1
    for c in cvec:
        obj_scale = obj_scale * c.denominator // gcd(obj_scale, c.denominator)
    cost1 = [0] * (n_cols + 1)
    for ci in art_of.values():
        cost1[ci] = 1
    cost2 = [0] * (n_cols + 1)
    for j in range(n):
        e = int(-obj_scale * cvec[j])
        cost2[2 * j] = e
        cost2[2 * j + 1] = -e

    tab = _Tableau(rows, basis, n_cols, [cost1, cost2])

    art_cols = set(art_of.values())
    allowed = [j not in art_cols for j in range(n_cols)]
    status = tab.run(0, allowed)
    if status != "optimal":
        raise AssertionError("phase-1 LP cannot be unbounded")
    if tab.costs[0][-1] != 0:
        return LpOutcome("infeasible")

    live_rows = [True] * len(tab.rows)
    for i in range(len(tab.rows)):
        if tab.basis[i] in art_cols:
            piv_col = next(
                (j for j in range(n_cols) if j not in art_cols and tab.rows[i][j] != 0),
                None,
            )
            if piv_col is None:
                live_rows[i] = False  # redundant constraint row
            else:
                tab.pivot(i, piv_col)
    dropped = {i for i, ok in enumerate(live_rows) if not ok}
    if dropped:
        keep = [i for i, ok in enumerate(live_rows) if ok]
        tab.rows = [tab.rows[i] for i in keep]
        tab.basis = [tab.basis[i] for i in keep]

    status = tab.run(1, allowed)
    if status == "unbounded":
        return LpOutcome("unbounded")

    scale = tab.scale
    values = [Fraction(0)] * n_cols
    for i, b in enumerate(tab.basis):
        values[b] = Fraction(tab.rows[i][-1], scale)
    point = {v: values[2 * j] - values[2 * j + 1] for j, v in enumerate(poly.space)}
    # cost2[-1]/scale is the (scaled) maximum of c
    value = Fraction(tab.costs[1][-1], scale * obj_scale)
    dual = [
        Fraction(0)
        if i in dropped
        else Fraction(
            sigma[i] * row_scale[i] * tab.costs[1][art_of[i]],
            scale * obj_scale,
        )
        for i in range(m)
    ]
    return LpOutcome("optimal", value, point, dual)


def _certify_optimal(poly: Polyhedron, cvec: list[Fraction], outcome: LpOutcome):
    point = outcome.point
    for con in poly.constraints:
        if not con.satisfied_by(point):
            raise AssertionError(f"simplex returned an infeasible point at {con.format()}")
    attained = sum(
        (c * point[v] for v, c in zip(poly.space, cvec) if c), Fraction(0)
    )
    if attained != outcome.value:
        raise AssertionError("simplex value does not match its point")
    combo: dict[Var, Fraction] = {}
    bound = Fraction(0)
    for u, con in zip(outcome.dual, poly.constraints):
        if con.sense == "<=" and u < 0:
            raise AssertionError("dual sign violation on a <= row")
        if con.sense == ">=" and u > 0:
            raise AssertionError("dual sign violation on a >= row")
        if u:
            for v, c in con.coeffs.items():
                combo[v] = combo.get(v, Fraction(0)) + u * c
            bound += u * con.rhs
    target = {v: c for v, c in zip(poly.space, cvec) if c}
    combo = {v: c for v, c in combo.items() if c}
    if combo != target or bound != outcome.value:
        raise AssertionError("dual certificate failed to reproduce the optimum")


def is_feasible_point(
    poly: Polyhedron, point: dict[Var, Fraction]
) -> tuple[bool, LinearInequality | None]:
    """Exact membership check; returns the first violated constraint if any."""
    missing = [v for v in poly.space if v not in point]
    if missing:
        raise ValueError(f"point is missing coordinates {missing}")
    pt = {v: Fraction(c) for v, c in point.items()}
    for con in poly.constraints:
        if not con.satisfied_by(pt):
            return False, con
    return True, None


# ---------------------------------------------------------------------------
# Fourier-Motzkin projection.


def _substitute_equality(
    target: LinearInequality, eq: LinearInequality, var: Var
) -> LinearInequality:
    c_t = target.coeffs.get(var)
    if not c_t:
        return target
    c_e = eq.coeffs[var]
    factor = c_t / c_e
    coeffs = dict(target.coeffs)
    coeffs.pop(var)
    for v, c in eq.coeffs.items():
        if v == var:
            continue
        coeffs[v] = coeffs.get(v, Fraction(0)) - factor * c
    return LinearInequality(coeffs, target.sense, target.rhs - factor * eq.rhs)


def _combine(low: tuple[dict, Fraction], up: tuple[dict, Fraction], var: Var):
    """low has negative coefficient on var, up positive; cancel var."""
    a_low, b_low = low
    a_up, b_up = up
    lam = a_up[var]  # > 0
    mu = -a_low[var]  # > 0
    coeffs = {}
    for v in set(a_low) | set(a_up):
        if v == var:
            continue
        c = lam * a_low.get(v, Fraction(0)) + mu * a_up.get(v, Fraction(0))
        if c:
            coeffs[v] = c
    return LinearInequality(coeffs, "<=", lam * b_low + mu * b_up)


def _drop_trivial(cons: list[LinearInequality]) -> list[LinearInequality]:
    seen, out = set(), []
    for con in cons:
        if not con.coeffs:
            if con.sense == "<=" and con.rhs >= 0:
                continue
            if con.sense == ">=" and con.rhs <= 0:
                continue
            if con.sense == "==" and con.rhs == 0:
                continue
        k = con.key()
        if k not in seen:
            seen.add(k)
            out.append(con)
    return out


def _prune_redundant(space, cons: list[LinearInequality]) -> list[LinearInequality]:
    """Remove constraints implied by the rest, one LP per candidate."""
    kept = list(cons)
    i = 0
    while i < len(kept):
        con = kept[i]
        if con.sense == "==":
            i += 1
            continue
        rest = kept[:i] + kept[i + 1 :]
        test = Polyhedron(space, rest)
        direction = "max" if con.sense == "<=" else "min"
        out = solve_lp(test, con.coeffs, direction)
        redundant = out.is_optimal and (
            out.value <= con.rhs if con.sense == "<=" else out.value >= con.rhs
        )
        if redundant:
            kept.pop(i)
        else:
            i += 1
    return kept


def project(poly: Polyhedron, eliminate, prune: bool = True) -> Polyhedron:
    """Exact Fourier-Motzkin projection eliminating the given variables.

    Equalities involving an eliminated variable are used as substitution
    pivots; the remaining inequalities are combined pairwise.  After each
    elimination the system is cleaned up syntactically and, when `prune`
    is set, constraints proved redundant by LP are dropped to keep the
    blowup under control.
    """
    eliminate = set(eliminate)
    extra = eliminate - set(poly.space)
    if extra:
        raise ValueError(f"cannot eliminate variables outside the space: {sorted(extra)}")
    cons = [c for c in poly.constraints]
    remaining_space = [v for v in poly.space if v not in eliminate]

    todo = set(eliminate)
    while todo:

        def cost(v):
            pos = sum(1 for c in cons if c.coeffs.get(v, 0) > 0 and c.sense != "==")
            neg = sum(1 for c in cons if c.coeffs.get(v, 0) < 0 and c.sense != "==")
            return (pos * neg, v.sort_key)

        var = min(todo, key=cost)
        todo.remove(var)

        eq = next((c for c in cons if c.sense == "==" and c.coeffs.get(var)), None)
        if eq is not None:
            cons = [_substitute_equality(c, eq, var) for c in cons if c is not eq]
        else:
            keep, lows, ups = [], [], []
            for con in cons:
                leqs = con.as_leq()
                if not con.coeffs.get(var):
                    keep.append(con)
                    continue
                for a, b in leqs:
                    c = a.get(var, Fraction(0))
                    if c > 0:
                        ups.append((a, b))
                    elif c < 0:
                        lows.append((a, b))
                    else:
                        keep.append(LinearInequality(a, "<=", b))
            cons = keep + [_combine(lo, up, var) for lo in lows for up in ups]
        cons = _drop_trivial(cons)
        if prune and len(cons) > 1:
            space_now = tuple(v for v in poly.space if v in todo or v in set(remaining_space))
            cons = _prune_redundant(space_now, cons)

    return Polyhedron(
        tuple(remaining_space),
        cons,
        poly.original_vars - eliminate,
    )


def polyhedron_equal(
    p: Polyhedron, q: Polyhedron
) -> tuple[bool, LinearInequality | None]:
    """Mutual-inclusion test via validity LPs.

    Returns (True, None) when every constraint of each polyhedron is
    valid for the other; otherwise (False, w) where w is a constraint of
    one of them violated by the other (its normal separates).
    """
    if set(p.space) != set(q.space):
        raise ValueError("polyhedra live on different variable spaces")
    for first, second in ((p, q), (q, p)):
        for con in first.constraints:
            for a, b in con.as_leq():
                out = solve_lp(second, a, "max")
                if out.status == "unbounded" or (out.is_optimal and out.value > b):
                    return False, LinearInequality(a, "<=", b)
                if out.status == "infeasible":
                    raise ValueError("polyhedron_equal called on an empty polyhedron")
    return True, None
