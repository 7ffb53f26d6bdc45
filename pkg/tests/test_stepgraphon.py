import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cliquedensity import scallop
from cliquedensity.enumeration import nonisomorphic_graphs
from cliquedensity.graphs import Graph, complete_graph, cycle_graph, empty_graph, hom_density, turan_graph
from cliquedensity.stepgraphon import (
    RootedDensityRequest,
    StepGraphon,
    clique_density,
    complete_partite,
    constant,
    construct_extremal,
    degree,
    edge_density,
    from_graph,
    induced,
    move_measure,
    neighbourhood,
    random_step_graphon,
    rooted_density,
)
from cliquedensity.surd import sqrt

F = Fraction


def brute_density(w: StepGraphon, r: int):
    """t(K_r, W) by summing over all ordered r-tuples of parts."""
    total = F(0)
    for tup in itertools.product(range(w.parts), repeat=r):
        term = F(1)
        for i in tup:
            term = term * w.measures[i]
        for a, b in itertools.combinations(tup, 2):
            term = term * w.values[a][b]
        total = total + term
    return total


def brute_rooted(w: StepGraphon, order: int, roots, minus=False):
    total = F(0)
    roots = list(roots)
    for tup in itertools.product(range(w.parts), repeat=order - len(roots)):
        verts = roots + list(tup)
        term = F(1)
        for i in tup:
            term = term * w.measures[i]
        for a, b in itertools.combinations(range(order), 2):
            if minus and (a, b) == (0, 1):
                continue
            term = term * w.values[verts[a]][verts[b]]
        total = total + term
    return total


seeds = st.integers(0, 10**6)


# -- examples -----------------------------------------------------------------


def test_from_graph_examples():
    w = from_graph(complete_graph(2))
    assert w.measures == (F(1, 2), F(1, 2))
    assert w.values == ((0, 1), (1, 0))
    assert all(x == 0 for row in from_graph(empty_graph(4)).values for x in row)
    with pytest.raises(ValueError):
        from_graph(Graph(0, ()))


def test_from_graph_commutes_with_densities():
    for n in range(1, 7):
        for g in nonisomorphic_graphs(n):
            w = from_graph(g)
            for r in (1, 2, 3, 4):
                assert clique_density(w, r) == hom_density(g, r)


def test_clique_density_examples():
    for r in range(1, 7):
        assert clique_density(constant(1), r) == 1
    w = complete_partite([F(1, 3)] * 3)
    assert clique_density(w, 3) == F(2, 9) == scallop.kappa(3, 3, F(1, 3))
    assert clique_density(from_graph(turan_graph(2, 4)), 3) == 0
    with pytest.raises(ValueError):
        clique_density(w, 0)


def test_term_budget():
    half = tuple(tuple(F(1, 3) if i == j else F(1, 2) for j in range(40)) for i in range(40))
    with pytest.raises(ValueError):
        clique_density(StepGraphon((F(1, 40),) * 40, half), 7)
    # complete partite graphons take the elementary symmetric route
    assert clique_density(complete_partite([F(1, 40)] * 40), 7) == math.factorial(7) * math.comb(40, 7) / F(40) ** 7


def test_degree_examples():
    assert degree(constant(1), 0) == 1
    w = from_graph(cycle_graph(4))
    assert all(degree(w, i) == F(1, 2) for i in range(4))
    two = StepGraphon((F(1, 3), F(2, 3)), ((F(1, 2), F(1, 2)), (F(1, 2), F(1, 2))))
    assert degree(two, 0) == degree(two, 1) == F(1, 2)
    with pytest.raises(IndexError):
        degree(two, 2)


def test_rooted_examples():
    w = random_step_graphon(3)
    for x in range(w.parts):
        assert rooted_density(w, RootedDensityRequest(2, (x,))) == degree(w, x)
    integral = sum(rooted_density(w, RootedDensityRequest(3, (x,))) * w.measures[x] for x in range(w.parts))
    assert integral == clique_density(w, 3)


def test_k4_minus_rooted_density():
    w = from_graph(complete_graph(4))
    for x, y in itertools.permutations(range(4), 2):
        value = rooted_density(w, RootedDensityRequest(4, (x, y), minus=True))
        # the two free vertices must land on the two remaining parts, in either order
        assert value == F(2, 16) == brute_rooted(w, 4, (x, y), minus=True)
    # without the root edge both roots may share a part
    assert rooted_density(w, RootedDensityRequest(4, (0, 0), minus=True)) == F(6, 16) == brute_rooted(w, 4, (0, 0), True)
    assert rooted_density(w, RootedDensityRequest(4, (0, 0))) == 0


def test_rooted_request_validation():
    with pytest.raises(ValueError):
        RootedDensityRequest(3, ())
    with pytest.raises(ValueError):
        RootedDensityRequest(1, (0, 1))
    with pytest.raises(ValueError):
        RootedDensityRequest(3, (0,), minus=True)
    with pytest.raises(IndexError):
        rooted_density(constant(1), RootedDensityRequest(2, (1,)))


def test_neighbourhood_examples():
    w = constant(1)
    assert neighbourhood(w, 0).measures == w.measures
    nb = neighbourhood(from_graph(complete_graph(3)), 0)
    assert nb.measures == (F(1, 2), F(1, 2))
    assert edge_density(nb) == F(1, 2)
    d = degree(from_graph(complete_graph(3)), 0)
    assert edge_density(nb) == rooted_density(from_graph(complete_graph(3)), RootedDensityRequest(3, (0,))) / d**2
    with pytest.raises(ValueError):
        neighbourhood(from_graph(empty_graph(3)), 0)


def test_induced_examples():
    w = random_step_graphon(11)
    assert induced(w, range(w.parts)) == w
    one = induced(w, [0])
    assert one.measures == (1,) and one.values == ((w.values[0][0],),)
    with pytest.raises(ValueError):
        induced(w, [])


def test_extremal_examples():
    ext = construct_extremal(3, F(2, 3))
    assert ext.base == complete_partite([F(1, 3)] * 3)
    assert clique_density(ext.base, 3) == F(2, 9)
    assert clique_density(construct_extremal(4, F(1, 2)).base, 4) == 0
    w = construct_extremal(4, F(7, 10))
    assert clique_density(w.base, 4) == scallop.h_r(4, F(7, 10))
    assert w.c == F(1, 4) + sqrt(15) / 60
    assert construct_extremal(3, 1).base == constant(1)
    with pytest.raises(ValueError):
        construct_extremal(2, F(1, 2))


def test_extremal_structure():
    for alpha in (F(0), F(1, 5), F(1, 2), F(3, 5), F(2, 3), F(7, 10), F(5, 6)):
        ext = construct_extremal(3, alpha)
        w, k, c = ext.base, ext.k, ext.c
        b = 1 - (k - 1) * c
        for i in ext.scaffold:
            assert w.measures[i] == c and w.values[i][i] == 0
        for i, j in itertools.combinations(range(w.parts), 2):
            if i in ext.scaffold or j in ext.scaffold:
                assert w.values[i][j] == 1
        block = induced(w, ext.block)
        assert sum(w.measures[i] for i in ext.block) == b
        assert edge_density(block) == 2 * c * (b - c) / b**2
        assert clique_density(block, 3) == 0


def test_json_round_trip_with_surds():
    w = construct_extremal(5, F(7, 10)).base
    assert StepGraphon.from_json(w.to_json()) == w
    assert '"measure": "1/4+1/60*sqrt(15)"' in w.to_json()


def test_validation():
    with pytest.raises(ValueError):
        StepGraphon((), ())
    with pytest.raises(ValueError):
        StepGraphon((F(1, 2), F(1, 3)), ((0, 0), (0, 0)))
    with pytest.raises(ValueError):
        StepGraphon((F(1, 2), F(1, 2)), ((0, 1), (0, 0)))
    with pytest.raises(ValueError):
        StepGraphon((F(1),), ((F(3, 2),),))
    with pytest.raises(ValueError):
        StepGraphon((F(0), F(1)), ((0, 0), (0, 0)))


# -- invariants -----------------------------------------------------------------


@given(seeds, st.integers(1, 4))
def test_clique_density_matches_brute_force(seed, r):
    w = random_step_graphon(seed, max_parts=5)
    assert clique_density(w, r) == brute_density(w, r)


@given(seeds)
def test_degree_integral(seed):
    w = random_step_graphon(seed)
    assert sum(degree(w, i) * w.measures[i] for i in range(w.parts)) == edge_density(w)


@given(seeds, st.integers(2, 5))
def test_rooted_consistency(seed, t):
    w = random_step_graphon(seed, max_parts=5)
    integral = sum(rooted_density(w, RootedDensityRequest(t, (x,))) * w.measures[x] for x in range(w.parts))
    assert integral == clique_density(w, t)


@given(seeds, st.integers(2, 5), st.data())
def test_two_root_patterns(seed, r, data):
    w = random_step_graphon(seed, max_parts=4)
    x = data.draw(st.integers(0, w.parts - 1))
    y = data.draw(st.integers(0, w.parts - 1))
    full = rooted_density(w, RootedDensityRequest(r, (x, y)))
    minus = rooted_density(w, RootedDensityRequest(r, (x, y), minus=True))
    assert full == w.values[x][y] * minus
    assert minus == brute_rooted(w, r, (x, y), minus=True)


@given(seeds, st.integers(2, 4))
def test_neighbourhood_relation(seed, r):
    w = random_step_graphon(seed)
    for x in range(w.parts):
        d = degree(w, x)
        if d == 0:
            continue
        lhs = clique_density(neighbourhood(w, x), r)
        assert lhs == rooted_density(w, RootedDensityRequest(r + 1, (x,))) / d**r


@given(st.integers(3, 5), st.fractions(0, F(99, 100), max_denominator=200))
def test_extremal_exactness(r, alpha):
    w = construct_extremal(r, alpha).base
    assert edge_density(w) == alpha
    assert clique_density(w, r) == scallop.h_r(r, alpha)


@given(seeds)
def test_move_measure_preserves_total(seed):
    w = random_step_graphon(seed)
    if w.parts < 2:
        return
    delta = min(w.measures[0], w.measures[1]) / 2
    moved = move_measure(w, 0, 1, delta)
    assert sum(moved.measures) == 1
    assert moved.values == w.values
    assert move_measure(moved, 1, 0, delta) == w


@given(seeds)
def test_random_graphons_valid_and_reproducible(seed):
    w = random_step_graphon(seed)
    assert w == random_step_graphon(seed)
    assert 1 <= w.parts <= 6
    assert edge_density(w) < 1
    assert math.isclose(float(sum(w.measures)), 1.0)
