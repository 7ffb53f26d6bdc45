import math
import random
from collections import Counter

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cliquedensity.enumeration import (
    are_isomorphic,
    canonical_form,
    graphs_with_edges,
    labeled_graphs,
    nonisomorphic_graphs,
)
from cliquedensity.graphs import Graph, complete_graph, complete_multipartite, cycle_graph, empty_graph, path_graph

CLASS_COUNTS = [1, 1, 2, 4, 11, 34, 156, 1044]


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


@st.composite
def labelled(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return Graph.from_edges(n, chosen)


def test_class_counts():
    for n, count in enumerate(CLASS_COUNTS):
        assert len(nonisomorphic_graphs(n)) == count


def test_class_count_n8():
    assert len(nonisomorphic_graphs(8)) == 12346


def test_matches_graph_atlas():
    atlas = Counter()
    for h in nx.graph_atlas_g():
        if 1 <= h.number_of_nodes() <= 7:
            atlas[h.number_of_nodes(), h.number_of_edges()] += 1
    ours = Counter((g.n, g.m) for n in range(1, 8) for g in nonisomorphic_graphs(n))
    assert ours == atlas


def test_representatives_pairwise_nonisomorphic():
    for n in range(1, 6):
        reps = nonisomorphic_graphs(n)
        for i, a in enumerate(reps):
            for b in reps[i + 1 :]:
                assert not nx.is_isomorphic(to_nx(a), to_nx(b))


def test_edge_complement_symmetry():
    for n in range(1, 8):
        top = math.comb(n, 2)
        for m in range(top + 1):
            assert len(graphs_with_edges(n, m)) == len(graphs_with_edges(n, top - m))


def test_symmetric_graphs_canonicalise():
    for g in (empty_graph(9), complete_graph(9), complete_multipartite([3, 3, 3]), cycle_graph(9)):
        assert canonical_form(g).m == g.m
    assert are_isomorphic(path_graph(4), Graph.from_edges(4, [(2, 0), (0, 3), (3, 1)]))
    assert not are_isomorphic(cycle_graph(6), Graph.from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]))


@given(labelled(), st.randoms(use_true_random=False))
def test_canonical_form_invariant_under_relabelling(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = g.relabel(perm)
    assert canonical_form(g) == canonical_form(h)
    assert are_isomorphic(g, h)
    assert nx.is_isomorphic(to_nx(canonical_form(g)), to_nx(g))


@given(labelled(max_n=7), labelled(max_n=7))
def test_isomorphism_agrees_with_networkx(a, b):
    assert are_isomorphic(a, b) == (a.n == b.n and nx.is_isomorphic(to_nx(a), to_nx(b)))


def test_labeled_graph_counts():
    for n in range(2, 7):
        top = math.comb(n, 2)
        for m in range(1, top + 1):
            graphs = list(labeled_graphs(n, m))
            assert len(graphs) == math.comb(top - 1, m - 1)
            assert all(g.m == m and g.adjacent(0, 1) for g in graphs)
    assert list(labeled_graphs(4, 0)) == [empty_graph(4)]
    assert list(labeled_graphs(1, 1)) == []


def test_labeled_graphs_cover_every_class():
    for n in range(2, 6):
        for m in range(1, math.comb(n, 2) + 1):
            classes = {canonical_form(g) for g in labeled_graphs(n, m)}
            assert classes == set(graphs_with_edges(n, m))


def test_generation_limits():
    with pytest.raises(ValueError):
        nonisomorphic_graphs(10)
    with pytest.raises(ValueError):
        nonisomorphic_graphs(-1)
    rng = random.Random(0)
    assert all(canonical_form(g) == g for g in rng.sample(nonisomorphic_graphs(7), 50))
