import random

import pytest
from hypothesis import given, settings, strategies as st

from brute import brute_force_cover, brute_force_treedepth
from instances import random_connected_graph
from qlayout.errors import GraphError
from qlayout.graph import Graph, complete_bipartite, complete_graph, cycle_graph, path_graph, star_graph
from qlayout.params import (
    TreedepthDecomposition,
    cover_path_decomposition,
    has_long_path,
    min_vertex_cover,
    treedepth,
    treedepth_number,
)


@pytest.mark.parametrize(
    "g, td",
    [(path_graph(7), 3), (path_graph(8), 4), (complete_graph(5), 5), (star_graph(6), 2), (cycle_graph(6), 4), (complete_bipartite(3, 3), 4)],
)
def test_known_treedepths(g, td):
    dec = treedepth(g, g.n)
    assert dec.height == td and not dec.closure_violations(g)
    assert treedepth(g, td - 1) is None


def test_disconnected_input_rejected():
    with pytest.raises(GraphError):
        treedepth(Graph(3, [(0, 1)]), 3)
    assert treedepth_number(Graph(4, [(0, 1), (2, 3)])) == 2


def test_long_path_filter():
    assert has_long_path(path_graph(9), 3)
    assert not has_long_path(path_graph(8), 3)
    with pytest.raises(ValueError):
        has_long_path(path_graph(3), 7)


def test_decomposition_helpers():
    td = TreedepthDecomposition((None, 0, 1, 1, 0))
    assert td.ancestors(2) == (0, 1, 2)
    assert td.height == 3 and td.roots() == [0]
    assert sorted(td.descendants(1)) == [2, 3]
    assert td.is_ancestor(0, 3) and not td.is_ancestor(2, 3)
    # dropping vertex 1 reattaches its children to the root
    assert td.restrict([0, 2, 3, 4]).parent == (None, 0, 0, 0)


@pytest.mark.parametrize("g, tau", [(complete_bipartite(3, 3), 3), (complete_graph(6), 5), (star_graph(9), 1), (cycle_graph(7), 4)])
def test_known_cover_numbers(g, tau):
    cert = min_vertex_cover(g)
    assert cert.size == tau and cert.covers(g)
    assert min_vertex_cover(g, tau - 1) is None


@given(st.integers(0, 10**6), st.integers(2, 10))
@settings(max_examples=60, deadline=None)
def test_cover_is_minimum(seed, n):
    g = random_connected_graph(random.Random(seed), n, 0.3)
    cert = min_vertex_cover(g)
    assert cert.covers(g) and cert.size == brute_force_cover(g)


@given(st.integers(0, 10**6), st.integers(1, 7))
@settings(max_examples=40, deadline=None)
def test_treedepth_against_elimination_orders(seed, n):
    g = random_connected_graph(random.Random(seed), n, 0.3)
    dec = treedepth(g, n)
    assert not dec.closure_violations(g)
    assert dec.height == brute_force_treedepth(g)


def test_cover_path_decomposition_is_valid():
    rng = random.Random(4)
    for _ in range(30):
        g = random_connected_graph(rng, rng.randint(2, 9), 0.3)
        cover = min_vertex_cover(g).cover
        dec = cover_path_decomposition(g, cover)
        assert not dec.closure_violations(g)
        assert dec.height <= len(cover) + 1
