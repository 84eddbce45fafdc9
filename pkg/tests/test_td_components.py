import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from instances import random_connected_graph
from qlayout.errors import CapacityError
from qlayout.graph import Graph, star_graph
from qlayout.params import TreedepthDecomposition, treedepth
from qlayout.td.components import decompose_at, equivalence_classes, renaming, signature


def figure_instance():
    """Height-4 decomposition where vertex 2 has three anchored components of sizes 1, 2, 3."""
    labels = list(range(1, 9))
    edges = [(1, 2), (2, 3), (1, 4), (4, 5), (2, 5), (2, 6), (6, 7), (6, 8), (1, 7)]
    g = Graph(8, [(u - 1, v - 1) for u, v in edges], labels=labels)
    parent = {2: 1, 3: 2, 4: 2, 5: 4, 6: 2, 7: 6, 8: 6}
    td = TreedepthDecomposition(tuple(None if v == 1 else parent[v] - 1 for v in labels))
    return g, td


def test_figure_instance():
    g, td = figure_instance()
    assert td.height == 4 and not td.closure_violations(g)
    comps, m = decompose_at(g, td, 1)
    assert comps[0].path == (0, 1)
    assert [tuple(g.labels[v] for v in c.vertices) for c in comps] == [(3,), (4, 5), (6, 7, 8)]
    assert m == 3


def test_leaf_has_no_components():
    g, td = figure_instance()
    assert decompose_at(g, td, 7) == ([], 0)


def test_star_centre_child_of_root():
    # root = one leaf, its child = the centre, other leaves are singletons
    g = star_graph(5)
    td = TreedepthDecomposition((1, None, 0, 0, 0, 0))
    comps, m = decompose_at(g, td, 0)
    assert [c.vertices for c in comps] == [(2,), (3,), (4,), (5,)]
    assert m == 1
    assert len(equivalence_classes(comps)) == 1


def _path_with_parts(parts):
    """Anchor path 0-1 with the given components hung as chains below vertex 1.

    ``parts`` is a list of (internal edges on 0..s-1, attachments per vertex).
    """
    edges = {(0, 1)}
    parent = [None, 0]
    for inner, attach in parts:
        base = len(parent)
        for i, at in enumerate(attach):
            parent.append(1 if i == 0 else base + i - 1)
            edges.update((p, base + i) for p in at)
        edges.update((base + a, base + b) for a, b in inner)
    g = Graph(len(parent), edges)
    td = TreedepthDecomposition(tuple(parent))
    return decompose_at(g, td, 1)[0]


def test_leaf_signatures():
    same = _path_with_parts([((), [[0, 1]]), ((), [[0, 1]])])
    assert signature(same[0]) == signature(same[1])
    diff = _path_with_parts([((), [[0, 1]]), ((), [[1]])])
    assert signature(diff[0]) != signature(diff[1])


def test_rotated_triangles_are_equivalent():
    tri = ((0, 1), (1, 2), (0, 2))
    a, b = _path_with_parts([(tri, [[1], [0], []]), (tri, [[], [1], [0]])])
    assert signature(a) == signature(b)
    eta = renaming(a, b)
    # every renaming must carry attachments along
    for v, w in eta.items():
        assert a.attachment_indices(v) == b.attachment_indices(w)
    # by hand: of the 3! bijections exactly one matches the attachments
    good = [
        p
        for p in itertools.permutations(b.vertices)
        if all(a.attachment_indices(v) == b.attachment_indices(w) for v, w in zip(a.vertices, p))
    ]
    assert len(good) == 1 and dict(zip(a.vertices, good[0])) == eta


def brute_force_equivalent(b, c) -> bool:
    if b.size != c.size:
        return False
    eb = {frozenset(e) for e in b.internal_edges}
    ec = {frozenset(e) for e in c.internal_edges}
    for image in itertools.permutations(c.vertices):
        eta = dict(zip(b.vertices, image))
        if all(b.attachment_indices(v) == c.attachment_indices(eta[v]) for v in b.vertices) and {
            frozenset((eta[u], eta[v])) for u, v in eb
        } == ec:
            return True
    return False


def _random_part(rng, size):
    inner = {(rng.randrange(i), i) for i in range(1, size)}
    inner |= {(i, j) for i in range(size) for j in range(i + 1, size) if rng.random() < 0.3}
    attach = [[p for p in (0, 1) if rng.random() < 0.4] for _ in range(size)]
    if not any(attach):
        attach[0].append(1)
    return tuple(sorted(inner)), attach


def _shuffled(rng, part):
    inner, attach = part
    size = len(attach)
    perm = list(range(size))
    rng.shuffle(perm)
    return tuple((perm[a], perm[b]) for a, b in inner), [attach[perm.index(i)] for i in range(size)]


@given(st.integers(0, 10**6), st.integers(1, 5))
@settings(max_examples=150, deadline=None)
def test_signature_matches_exhaustive_renaming(seed, size):
    rng = random.Random(seed)
    p1 = _random_part(rng, size)
    p2 = _shuffled(rng, p1) if rng.random() < 0.5 else _random_part(rng, size)
    a, b = _path_with_parts([p1, p2])
    assert (signature(a) == signature(b)) == brute_force_equivalent(a, b)
    assert (renaming(a, b) is not None) == brute_force_equivalent(a, b)


def test_capacity_error():
    inner = tuple((i, i + 1) for i in range(11))
    (big,) = _path_with_parts([(inner, [[1]] + [[]] * 11)])
    with pytest.raises(CapacityError):
        signature(big)


def test_observation_bound_on_optimal_decompositions():
    """m_t <= (max |A_q| over children q) * (max m_q over children q) + 1."""
    rng = random.Random(11)
    for _ in range(40):
        g = random_connected_graph(rng, rng.randint(2, 11), 0.2)
        td = treedepth(g, g.n)
        for t in g.vertices:
            kids = td.children(t)
            if not kids:
                continue
            _, m_t = decompose_at(g, td, t)
            per_child = [decompose_at(g, td, q) for q in kids]
            a = max(len(c) for c, _ in per_child)
            b = max(m for _, m in per_child)
            assert m_t <= a * b + 1
