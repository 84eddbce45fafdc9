import itertools
import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from instances import random_graph
from qlayout.errors import LayoutError, ParseError
from qlayout.graph import Graph, complete_graph, cycle_graph, parse_graph
from qlayout.layout import (
    LinearLayout,
    edges_nest,
    layout_from_json,
    layout_to_json,
    layout_to_svg,
    max_rainbow,
    min_queues_for_order,
    validate_layout,
)
from qlayout.oracle import brute_force_max_rainbow


def test_nesting_needs_four_distinct_endpoints():
    order = [0, 1, 2, 3]
    assert edges_nest(order, (0, 3), (1, 2))
    assert not edges_nest(order, (0, 2), (1, 3))  # crossing
    assert not edges_nest(order, (0, 3), (0, 2))  # shared endpoint
    assert not edges_nest(order, (0, 1), (2, 3))


def test_k8_identity_order_needs_four_queues():
    # the four edges (0,7),(1,6),(2,5),(3,4) pairwise nest
    g = complete_graph(8)
    rb = max_rainbow(g, range(8))
    assert rb.size == 4
    assert rb.edges == ((0, 7), (1, 6), (2, 5), (3, 4))
    layout = min_queues_for_order(g, range(8))
    assert layout.num_queues == 4 and validate_layout(g, layout) is None


def test_violation_is_reported():
    g = cycle_graph(4)
    bad = LinearLayout((0, 1, 2, 3), {e: 1 for e in g.edges}, 1)
    v = validate_layout(g, bad)
    assert v is not None and v.outer == (0, 3) and v.inner == (1, 2)


def test_structural_errors_raise():
    g = cycle_graph(4)
    with pytest.raises(LayoutError):
        validate_layout(g, LinearLayout((0, 1, 2), {e: 1 for e in g.edges}, 1))
    with pytest.raises(LayoutError):
        validate_layout(g, LinearLayout((0, 1, 2, 3), {(0, 1): 1}, 1))
    with pytest.raises(LayoutError):
        validate_layout(g, LinearLayout((0, 1, 2, 3), {e: 2 for e in g.edges}, 1))


def test_partial_layout_ignores_missing_vertices():
    g = cycle_graph(5)
    part = LinearLayout((0, 1, 2), {(0, 1): 1, (1, 2): 1}, 1)
    assert validate_layout(g, part, partial=True) is None


def test_json_round_trip_and_labels():
    g = parse_graph("a b\nb c\nc d\nd a\n")
    layout = min_queues_for_order(g, (0, 1, 3, 2))
    doc = json.loads(layout_to_json(g, layout))
    assert doc["order"] == ["a", "b", "d", "c"]
    back = layout_from_json(g, layout_to_json(g, layout))
    assert back.order == layout.order and back.sigma == layout.sigma


def test_layout_file_with_unknown_vertex():
    g = parse_graph("a b\n")
    with pytest.raises((ParseError, LayoutError)):
        layout_from_json(g, '{"order": ["a", "zz"], "queues": {"1": [["a", "zz"]]}}')


def test_svg_has_one_group_per_queue():
    g = complete_graph(6)
    svg = layout_to_svg(g, min_queues_for_order(g, range(6)))
    assert svg.startswith("<svg") and svg.count("data-queue=") == 3


def test_lexicographically_smallest_rainbow_is_stable():
    g = Graph(6, [(0, 5), (1, 4), (0, 4), (2, 3)])
    assert max_rainbow(g, range(6)).edges == ((0, 5), (1, 4), (2, 3))


orders = st.integers(2, 8).flatmap(lambda n: st.tuples(st.just(n), st.permutations(range(n)), st.integers(0, 10**6)))


@given(orders)
@settings(max_examples=150, deadline=None)
def test_greedy_assignment_matches_rainbow(data):
    n, order, seed = data
    g = random_graph(random.Random(seed), n, 0.5)
    layout = min_queues_for_order(g, order)
    assert validate_layout(g, layout) is None
    assert layout.num_queues == max_rainbow(g, order).size == brute_force_max_rainbow(g, order)


def test_fewer_queues_than_rainbow_is_impossible():
    # K6 under the identity order has a 3-rainbow, so every 2-queue assignment fails
    g = complete_graph(6)
    order = tuple(range(6))
    assert max_rainbow(g, order).size == 3
    edges = sorted(g.edges)
    for colouring in itertools.product([1, 2], repeat=len(edges)):
        sigma = dict(zip(edges, colouring))
        assert validate_layout(g, LinearLayout(order, sigma, 2)) is not None
