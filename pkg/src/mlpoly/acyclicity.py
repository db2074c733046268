"""Hypergraph acyclicity: cycle predicates, search, and classification.

The central notions are alpha-cycles and simple cycles.  Both are edge
sequences e_1, ..., e_l (with e_{l+1} = e_1, l >= 3) judged through the
consecutive intersections s_i = e_i & e_{i+1}:

* alpha-cycle: (A1) no edge of the sequence is contained in another one,
  and (A2) no edge of the whole hypergraph covers the union of three
  *consecutive* intersections s_{i-1} | s_i | s_{i+1}.
* simple cycle: no edge of the hypergraph covers s_i | s_j | s_k for
  *any* three indices i < j < k.

A hypergraph is alpha-acyclic exactly when its maximal edges admit a
running-intersection ordering, which is equivalent to having no simple
cycle (and to having no alpha-cycle).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from .hypergraph import Edge, Hypergraph, edge_sort_key, maximal_edges

__all__ = [
    "CycleCandidate",
    "RunningIntersectionOrdering",
    "is_alpha_cycle",
    "is_simple_cycle",
    "is_chordless_alpha_cycle",
    "running_intersection_ordering",
    "is_alpha_acyclic",
    "find_simple_cycle",
    "find_alpha_cycle",
    "is_berge_acyclic",
    "reduce_simple_cycle",
    "CyclePreconditionError",
]


class CyclePreconditionError(ValueError):
    """A cycle operation was called on input violating its precondition."""


@dataclass(frozen=True)
class CycleCandidate:
    """An edge sequence e_1..e_l with the wrap-around e_{l+1} = e_1 implicit."""

    edges: tuple[Edge, ...]

    def __post_init__(self):
        edges = tuple(tuple(sorted(e)) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        if len(edges) < 3:
            raise ValueError("a cycle candidate needs at least three edges")
        if len(edges) == 3 and len(set(edges)) < 3:
            raise ValueError("degenerate length-3 candidate with repeated edges")

    def __len__(self):
        return len(self.edges)

    @property
    def intersections(self) -> tuple[frozenset[int], ...]:
        """s_i = e_i & e_{i+1}, indices wrapping around."""
        es = [set(e) for e in self.edges]
        n = len(es)
        return tuple(frozenset(es[i] & es[(i + 1) % n]) for i in range(n))

    def check_host(self, g: Hypergraph):
        missing = [e for e in self.edges if not g.has_edge(e)]
        if missing:
            raise ValueError(f"cycle edges {missing} are not edges of the hypergraph")


@dataclass(frozen=True)
class RunningIntersectionOrdering:
    """Ordering f_1..f_m with, for each k >= 2, a witness j(k) < k such that
    f_k & (f_1 | ... | f_{k-1}) is contained in f_{j(k)}."""

    order: tuple[Edge, ...]
    witnesses: tuple[int, ...]  # witnesses[k-2] = j(k) as 0-based index, for k >= 2

    def validate(self) -> bool:
        seen: set[int] = set()
        for k, f in enumerate(self.order):
            if k > 0:
                j = self.witnesses[k - 1]
                if not (0 <= j < k):
                    return False
                if not (set(f) & seen) <= set(self.order[j]):
                    return False
            seen.update(f)
        return True


# ---------------------------------------------------------------------------
# Bitmask helpers.  All cycle searches run on bitmask encodings of edges,
# which makes the exhaustive desk-scale sweeps cheap.


def _bit_encode(g: Hypergraph) -> tuple[dict[int, int], list[int]]:
    pos = {v: i for i, v in enumerate(g.nodes)}
    masks = [sum(1 << pos[v] for v in e) for e in g.edges]
    return pos, masks


def _mask_of(e: Edge, pos: dict[int, int]) -> int:
    return sum(1 << pos[v] for v in e)


def _alpha_conditions(seq: list[int], all_masks: list[int]) -> bool:
    n = len(seq)
    for i in range(n):
        for j in range(n):
            if i != j and seq[i] & ~seq[j] == 0:
                return False
    s = [seq[i] & seq[(i + 1) % n] for i in range(n)]
    for i in range(n):
        u = s[(i - 1) % n] | s[i] | s[(i + 1) % n]
        for m in all_masks:
            if u & ~m == 0:
                return False
    return True


def _simple_condition(seq: list[int], all_masks: list[int]) -> bool:
    n = len(seq)
    s = [seq[i] & seq[(i + 1) % n] for i in range(n)]
    for i, j, k in combinations(range(n), 3):
        u = s[i] | s[j] | s[k]
        for m in all_masks:
            if u & ~m == 0:
                return False
    return True


def is_alpha_cycle(g: Hypergraph, cand: CycleCandidate) -> bool:
    """Conditions (A1) and (A2) against the full edge set of g."""
    cand.check_host(g)
    pos, masks = _bit_encode(g)
    seq = [_mask_of(e, pos) for e in cand.edges]
    return _alpha_conditions(seq, masks)


def is_simple_cycle(g: Hypergraph, cand: CycleCandidate) -> bool:
    """Condition (S): no edge covers any three of the intersections s_i."""
    cand.check_host(g)
    pos, masks = _bit_encode(g)
    seq = [_mask_of(e, pos) for e in cand.edges]
    return _simple_condition(seq, masks)


def is_chordless_alpha_cycle(g: Hypergraph, cand: CycleCandidate) -> bool:
    """True iff no contiguous stretch of the cycle closes into a shorter
    alpha-cycle through some other edge of g.

    Raises CyclePreconditionError when the candidate itself is not an
    alpha-cycle.
    """
    if not is_alpha_cycle(g, cand):
        raise CyclePreconditionError("candidate is not an alpha-cycle")
    n = len(cand)
    edges = cand.edges
    pos, masks = _bit_encode(g)
    for i in range(n):
        for j in range(i + 1, n):
            if j - i > n - 3:
                continue
            stretch = edges[i : j + 1]
            excluded = set(stretch)
            for shortcut in g.edges:
                if shortcut in excluded:
                    continue
                seq = [_mask_of(e, pos) for e in stretch]
                seq.append(_mask_of(shortcut, pos))
                if _alpha_conditions(seq, masks):
                    return False
    return True


# ---------------------------------------------------------------------------
# Running-intersection orderings via GYO reduction.


def running_intersection_ordering(g: Hypergraph) -> RunningIntersectionOrdering | None:
    """A running-intersection ordering of the maximal edges, or None.

    Works by GYO reduction: repeatedly strip nodes that lie in a single
    remaining edge, then remove any edge whose stripped core is contained
    in another remaining edge, recording the container as its parent.
    The reduction empties out exactly on alpha-acyclic hypergraphs;
    reversing the removal order and reading parents as witnesses gives
    the ordering.
    """
    maxes = list(maximal_edges(g))
    if len(maxes) <= 1:
        return RunningIntersectionOrdering(tuple(maxes), ())
    alive: dict[Edge, set[int]] = {e: set(e) for e in maxes}
    parent: dict[Edge, Edge] = {}
    removal: list[Edge] = []
    while len(alive) > 1:
        count: dict[int, int] = {}
        for core in alive.values():
            for v in core:
                count[v] = count.get(v, 0) + 1
        for core in alive.values():
            core -= {v for v in core if count.get(v, 0) == 1}
        removed = None
        for e in sorted(alive, key=edge_sort_key):
            for f in sorted(alive, key=edge_sort_key):
                if e != f and alive[e] <= alive[f]:
                    removed, parent[e] = e, f
                    break
            if removed:
                break
        if removed is None:
            return None
        removal.append(removed)
        del alive[removed]
    root = next(iter(alive))
    order = [root] + [e for e in reversed(removal)]
    index = {e: i for i, e in enumerate(order)}
    witnesses = tuple(index[parent[e]] for e in order[1:])
    rio = RunningIntersectionOrdering(tuple(order), witnesses)
    if not rio.validate():
        raise AssertionError("GYO reduction produced an invalid ordering")
    return rio


def is_alpha_acyclic(g: Hypergraph) -> bool:
    return running_intersection_ordering(g) is not None


# ---------------------------------------------------------------------------
# Cycle search.


def _canonical_sequences(n_edges: int, length: int):
    """Index sequences of distinct edges, one per rotation/reflection class."""
    for first in range(n_edges):
        rest = [i for i in range(first + 1, n_edges)]
        for perm in permutations(rest, length - 1):
            if length > 2 and perm[0] > perm[-1]:
                continue
            yield (first,) + perm


def find_simple_cycle(g: Hypergraph, max_len: int = 8) -> CycleCandidate | None:
    """A minimum-length simple cycle of g with length <= max_len, or None.

    Only maximal edges need to be considered: replacing any edge of a
    simple cycle by a maximal edge containing it only grows the s_i, so
    condition (S) survives the replacement.
    """
    if max_len < 3:
        raise ValueError("max_len must be at least 3")
    maxes = sorted(maximal_edges(g), key=edge_sort_key)
    pos, all_masks = _bit_encode(g)
    masks = [_mask_of(e, pos) for e in maxes]
    for length in range(3, min(max_len, len(maxes)) + 1):
        for idx in _canonical_sequences(len(maxes), length):
            if _simple_condition([masks[i] for i in idx], all_masks):
                return CycleCandidate(tuple(maxes[i] for i in idx))
    return None


def find_alpha_cycle(g: Hypergraph, max_len: int = 8) -> CycleCandidate | None:
    """Exhaustive alpha-cycle search over all edges of g (not just maximal)."""
    if max_len < 3:
        raise ValueError("max_len must be at least 3")
    pos, all_masks = _bit_encode(g)
    for length in range(3, min(max_len, len(g.edges)) + 1):
        for idx in _canonical_sequences(len(g.edges), length):
            if _alpha_conditions([all_masks[i] for i in idx], all_masks):
                return CycleCandidate(tuple(g.edges[i] for i in idx))
    return None


def find_simple_cycle_exhaustive(g: Hypergraph, max_len: int = 8) -> CycleCandidate | None:
    """Simple-cycle search over all edges; oracle twin of find_simple_cycle."""
    if max_len < 3:
        raise ValueError("max_len must be at least 3")
    pos, all_masks = _bit_encode(g)
    for length in range(3, min(max_len, len(g.edges)) + 1):
        for idx in _canonical_sequences(len(g.edges), length):
            if _simple_condition([all_masks[i] for i in idx], all_masks):
                return CycleCandidate(tuple(g.edges[i] for i in idx))
    return None


# ---------------------------------------------------------------------------
# Berge acyclicity.


def is_berge_acyclic(g: Hypergraph) -> bool:
    """True iff the bipartite node-edge incidence graph is a forest."""
    parent = list(range(len(g.nodes) + len(g.edges)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    node_index = {v: i for i, v in enumerate(g.nodes)}
    for j, e in enumerate(g.edges):
        for v in e:
            a, b = find(node_index[v]), find(len(g.nodes) + j)
            if a == b:
                return False
            parent[a] = b
    return True


# ---------------------------------------------------------------------------
# Reducing the length of a simple cycle by one.


def reduce_simple_cycle(
    g: Hypergraph, cand: CycleCandidate
) -> tuple[Hypergraph, CycleCandidate]:
    """Shorten a simple cycle of length >= 4 by one via expand/contract surgery.

    Every node of s_1 | s_2 is expanded into a cluster of fresh nodes,
    one per member of s_1 | s_2; matching cluster nodes are then merged
    pairwise into nodes u_{vw}.  The images e'_i of the original cycle
    edges, with e'_2 omitted, form a cycle one shorter, which is verified
    to be simple before returning.

    The guarantee holds when the input cycle has minimum length among
    simple cycles of g; otherwise the verification may fail, which is
    reported rather than silently accepted.
    """
    # local import: transforms depends on exactlp, not on this module
    from .transforms import contract, expand

    if len(cand) < 4:
        raise CyclePreconditionError("cycle length must be at least 4 to reduce")
    if not is_simple_cycle(g, cand):
        raise CyclePreconditionError("candidate is not a simple cycle")

    edges = cand.edges
    s1 = set(edges[0]) & set(edges[1])
    s2 = set(edges[1]) & set(edges[2])
    cluster_src = sorted(s1 | s2)

    fresh = max(g.nodes) + 1
    label: dict[tuple[int, int], int] = {}
    for v in cluster_src:
        for w in cluster_src:
            label[(v, w)] = fresh
            fresh += 1

    work = g
    for v in cluster_src:
        work = expand(work, v, [label[(v, w)] for w in cluster_src])
    for v, w in combinations(cluster_src, 2):
        # merge the node of v's cluster labeled w into the node of w's
        # cluster labeled v; the surviving node plays the role of u_{vw}
        work, _pin = contract(work, label[(v, w)], label[(w, v)])
    # the untouched diagonal node of each cluster stands in for the original
    rename = {label[(v, v)]: v for v in cluster_src}
    merged = Hypergraph(
        [rename.get(v, v) for v in work.nodes],
        [[rename.get(v, v) for v in e] for e in work.edges],
    )

    u_of = {frozenset((v, w)): label[(w, v)] for v, w in combinations(cluster_src, 2)}

    def image(e: Edge) -> Edge:
        extra = {
            u
            for pair, u in u_of.items()
            if pair & set(e)
        }
        return tuple(sorted(set(e) | extra))

    new_edges = [image(e) for e in edges]
    for e in new_edges:
        if not merged.has_edge(e):
            raise AssertionError(f"expected image edge {e} missing after surgery")
    shorter = CycleCandidate(tuple([new_edges[0]] + new_edges[2:]))
    if not is_simple_cycle(merged, shorter):
        raise CyclePreconditionError(
            "reduced sequence is not a simple cycle; the input was probably "
            "not a minimum-length simple cycle"
        )
    return merged, shorter
