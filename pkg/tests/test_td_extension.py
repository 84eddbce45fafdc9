import random

import pytest
from hypothesis import given, settings, strategies as st

from instances import anchored_instance
from qlayout.errors import LayoutError
from qlayout.graph import Graph, star_graph
from qlayout.layout import LinearLayout, validate_layout
from qlayout.oracle import oracle_is_1queue
from qlayout.params import TreedepthDecomposition
from qlayout.td.components import decompose_at, equivalence_classes
from qlayout.td.extension import (
    AlignedFamily,
    PairKind,
    _block_ok,
    blocks_of,
    classify_pair,
    delimiting_sequence,
    extend_layout,
    find_delimiting_pair,
    lift_component,
    order_classes,
)
from qlayout.td.kernel import prune_once
from qlayout.td.thresholds import Thresholds


def positions(*order):
    return {v: i for i, v in enumerate(order)}


def test_classify_pair():
    pos = positions(*range(6))
    assert classify_pair(pos, (0, 1), (2, 3), 0, 1) is PairKind.SEPARATE
    assert classify_pair(pos, (0, 2), (1, 3), 0, 1) is PairKind.INTERLEAVING
    assert classify_pair(pos, (0, 3), (1, 2), 0, 1) is PairKind.NESTING
    with pytest.raises(LayoutError):
        classify_pair(pos, (0, 3), (1, 2), 0, 1, edge=True)
    with pytest.raises(LayoutError):
        classify_pair(pos, (0, 1), (3, 2), 0, 1)


def test_delimiting_pair_basic():
    pos = positions(*range(10))
    two = AlignedFamily((), ((0, 1),), ((0, 2), (1, 3)))
    assert find_delimiting_pair(pos, two) == (0, 1)
    apart = AlignedFamily((), ((0, 1),), ((0, 1), (2, 3), (4, 5)))
    assert find_delimiting_pair(pos, apart) is None


def test_delimiting_pair_among_interleaving_three():
    # five copies of an edge; the first three pairwise interleave, the last two stand apart
    pos = positions(*range(10))
    fam = AlignedFamily((), ((0, 1),), ((0, 3), (1, 4), (2, 5), (6, 7), (8, 9)))
    seq, assigned = delimiting_sequence(pos, fam, (0, 1))
    assert seq == [0, 3, 4] and assigned == [0, 0, 0, 1, 2]
    x, y = find_delimiting_pair(pos, fam)
    assert {x, y} <= {0, 1, 2} and x != y


def test_single_vertex_block():
    g = star_graph(2)
    assert blocks_of(g, positions(0, 1, 2), (1,), (2,)) == [(1,)]


def test_adjacent_vertices_split():
    # path vertex 0; copies a1-b1 and a2-b2
    g = Graph(5, [(0, 1), (0, 3), (1, 2), (3, 4)])
    assert blocks_of(g, positions(0, 1, 2, 3, 4), (1, 2), (3, 4)) == [(1,), (2,)]


def test_orientation_checked():
    g = Graph(5, [(0, 1), (0, 3), (1, 2), (3, 4)])
    with pytest.raises(LayoutError):
        blocks_of(g, positions(0, 3, 4, 1, 2), (1, 2), (3, 4))


def test_extension_requires_matching_pair():
    g = star_graph(3)
    layout = LinearLayout((0, 1, 2), {(0, 1): 1, (0, 2): 1}, 1)
    with pytest.raises(LayoutError):
        extend_layout(g, layout, (3,), (1,), (2,), {2: 3})


def test_single_vertex_goes_between_its_brackets():
    g = star_graph(3)
    layout = LinearLayout((0, 1, 2), {(0, 1): 1, (0, 2): 1}, 1)
    out = extend_layout(g, layout, (3,), (1,), (2,), {1: 3})
    assert out.order == (0, 1, 3, 2) and validate_layout(g, out) is None


def _yes_cases(seed: int, count: int):
    """Pruned instances whose smaller graph is 1-queue, with the oracle's witness."""
    rng = random.Random(seed)
    while count:
        size = rng.choice([1, 2, 2, 3])
        copies = rng.randint(5, {1: 20, 2: 7, 3: 5}[size])
        inst = anchored_instance(rng, rng.randint(1, 3), size, copies)
        pr = prune_once(inst.graph, inst.decomposition, inst.anchor, Thresholds.synthetic(5))
        where = {v: i for i, v in enumerate(pr.kept)}
        rest = [tuple(where[v] for v in b) for b in inst.copies if not set(b) & set(pr.removed.vertices)]
        ok, witness = oracle_is_1queue(pr.graph, cap=None, blocks=[rest])
        if not ok:
            continue
        comps, _ = decompose_at(inst.graph, inst.decomposition, inst.anchor)
        siblings = [c for c in equivalence_classes(comps)[pr.signature] if c.vertices != pr.removed.vertices]
        count -= 1
        yield inst, pr, witness.relabel(pr.kept), siblings


@given(st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_structure_on_valid_layouts(seed):
    for inst, pr, layout, siblings in _yes_cases(seed, 2):
        g = inst.graph
        pos = layout.position
        k = inst.decomposition.height
        for fam in order_classes(pos, siblings):
            for e in fam.edges:
                seq, _ = delimiting_sequence(pos, fam, e)
                assert len(seq) <= 2 ** (k + 1) + 1
            pair = find_delimiting_pair(pos, fam)
            if pair is None:
                continue
            cx, cy = fam.members[pair[0]], fam.members[pair[1]]
            assert all(pos[a] < pos[b] for a, b in zip(cx, cy))
            twin = dict(zip(cx, cy))
            blocks = blocks_of(g, pos, cx, cy)
            assert sorted(v for b in blocks for v in b) == sorted(cx)
            for b in blocks:
                assert _block_ok(g, pos, list(b), twin)
                assert not any(g.has_edge(u, v) for u in b for v in b)
            for left, right in zip(blocks, blocks[1:]):
                assert not _block_ok(g, pos, list(left) + [right[0]], twin)
        lifted = lift_component(g, layout, pr.removed, siblings)
        if lifted is not None:
            assert validate_layout(g, lifted) is None and lifted.num_queues == 1


def test_broom_family_extension():
    leaves = 12
    g = Graph(leaves + 2, [(0, 1)] + [(1, 2 + i) for i in range(leaves)])
    td = TreedepthDecomposition((None, 0) + (1,) * leaves)
    pr = prune_once(g, td, 1, Thresholds.synthetic(5))
    assert pr.removed.vertices == (2,)
    # leaves to the right of t, r on the far left
    rest = LinearLayout((0, 1) + tuple(range(3, leaves + 2)), {e: 1 for e in g.edges if 2 not in e}, 1)
    comps, _ = decompose_at(g, td, 1)
    siblings = [c for c in comps if c.vertices != (2,)]
    out = lift_component(g, rest, pr.removed, siblings)
    assert out is not None and validate_layout(g, out) is None
