import json
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mlpoly.hypergraph import (
    Hypergraph,
    completion,
    induced_subhypergraph,
    is_complete,
    maximal_edges,
    section_hypergraph,
)


def subsets_oracle(edge):
    """Independent enumeration of the size >= 2 subsets of an edge."""
    out = set()
    for k in range(2, len(edge) + 1):
        out.update(combinations(sorted(edge), k))
    return out


def test_rejects_singleton_edges():
    with pytest.raises(ValueError):
        Hypergraph([1, 2], [[1]])


def test_rejects_uncovered_nodes():
    with pytest.raises(ValueError):
        Hypergraph([1, 2, 3], [[1, 2]])


def test_rejects_edges_outside_nodes():
    with pytest.raises(ValueError):
        Hypergraph([1, 2], [[1, 2, 3]])


def test_completion_single_triple():
    g = Hypergraph([1, 2, 3], [[1, 2, 3]])
    assert set(completion(g).edges) == {(1, 2), (1, 3), (2, 3), (1, 2, 3)}


def test_completion_graph_unchanged():
    g = Hypergraph([1, 2, 3], [[1, 2], [2, 3], [1, 3]])
    assert completion(g) == g


def test_completion_three_triples():
    g = Hypergraph([1, 2, 3, 4], [[1, 2, 4], [2, 3, 4], [1, 3, 4]])
    expected = set()
    for e in g.edges:
        expected |= subsets_oracle(e)
    closed = completion(g)
    assert set(closed.edges) == expected
    assert len(closed.edges) == 9  # 6 pairs + 3 triples


def test_maximal_edges_complete():
    g = Hypergraph([1, 2, 3], [[1, 2], [1, 3], [2, 3], [1, 2, 3]])
    assert maximal_edges(g) == ((1, 2, 3),)


def test_maximal_edges_graph():
    g = Hypergraph([1, 2, 3], [[1, 2], [2, 3], [1, 3]])
    assert set(maximal_edges(g)) == set(g.edges)


def test_maximal_edges_closure_of_triples():
    g = completion(Hypergraph([1, 2, 3, 4], [[1, 2, 4], [2, 3, 4], [1, 3, 4]]))
    assert set(maximal_edges(g)) == {(1, 2, 4), (2, 3, 4), (1, 3, 4)}


def test_induced_triangle_to_pair():
    g = Hypergraph([1, 2, 3], [[1, 2], [2, 3], [1, 3]])
    sub, origin, dropped = induced_subhypergraph(g, {1, 2})
    assert sub == Hypergraph([1, 2], [[1, 2]])
    assert origin == {(1, 2): (1, 2)}
    assert dropped == ()


def test_induced_origin_tie_break():
    g = Hypergraph([1, 2, 3, 4], [[1, 2, 3], [2, 3, 4]])
    sub, origin, _ = induced_subhypergraph(g, {2, 3})
    assert sub.edges == ((2, 3),)
    # both triples shrink to {2,3}; the lexicographically smallest wins
    assert origin[(2, 3)] == (1, 2, 3)


def test_induced_full_set_is_identity():
    g = Hypergraph([1, 2, 3], [[1, 2], [2, 3]])
    sub, _, dropped = induced_subhypergraph(g, set(g.nodes))
    assert sub == g and dropped == ()


def test_induced_rejects_foreign_nodes():
    g = Hypergraph([1, 2], [[1, 2]])
    with pytest.raises(ValueError):
        induced_subhypergraph(g, {1, 5})


def test_section_examples():
    tri = Hypergraph([1, 2, 3], [[1, 2], [2, 3], [1, 3]])
    assert section_hypergraph(tri, {1, 2}).edges == ((1, 2),)
    g = Hypergraph([1, 2, 3, 4], [[1, 2, 3], [2, 3, 4]])
    assert section_hypergraph(g, {1, 2, 3}).edges == ((1, 2, 3),)
    assert section_hypergraph(g, set(g.nodes)) == g
    with pytest.raises(ValueError):
        section_hypergraph(g, {1, 9})


def test_is_complete():
    assert is_complete(Hypergraph([1, 2, 3], [[1, 2], [1, 3], [2, 3], [1, 2, 3]]))
    assert not is_complete(Hypergraph([1, 2, 3], [[1, 2], [1, 3], [2, 3]]))
    assert is_complete(Hypergraph([1, 2], [[1, 2]]))


def test_json_round_trip():
    g = Hypergraph([1, 2, 3, 4], [[1, 2, 4], [2, 3, 4]])
    text = g.to_json()
    assert Hypergraph.from_json(text) == g
    assert Hypergraph.from_json(text).to_json() == text
    payload = json.loads(text)
    assert payload == {"nodes": [1, 2, 3, 4], "edges": [[1, 2, 4], [2, 3, 4]]}


def test_canonicalize_dense_labels():
    g = Hypergraph([3, 7, 9], [[3, 7], [7, 9]])
    dense, relabel = g.canonicalize()
    assert dense.nodes == (0, 1, 2)
    assert relabel == {3: 0, 7: 1, 9: 2}
    assert dense.edges == ((0, 1), (1, 2))


# -- randomized structural invariants ---------------------------------------

edge_strategy = st.sets(st.integers(1, 5), min_size=2, max_size=4)
hypergraph_strategy = st.builds(
    lambda edges: Hypergraph({v for e in edges for v in e}, edges),
    st.sets(edge_strategy.map(lambda e: tuple(sorted(e))), min_size=1, max_size=5),
)


@settings(max_examples=60, deadline=None)
@given(hypergraph_strategy)
def test_completion_idempotent(g):
    assert completion(completion(g)) == completion(g)


@settings(max_examples=60, deadline=None)
@given(hypergraph_strategy)
def test_maximal_edges_stable_under_completion(g):
    assert set(maximal_edges(g)) == set(maximal_edges(completion(g)))


@settings(max_examples=60, deadline=None)
@given(hypergraph_strategy)
def test_section_edges_inside_induced(g):
    nodes = list(g.nodes)
    keep = set(nodes[: max(2, len(nodes) // 2)])
    sect = section_hypergraph(g, keep)
    if sect.edges:
        sub, _, _ = induced_subhypergraph(g, keep)
        assert set(sect.edges) <= set(sub.edges)
