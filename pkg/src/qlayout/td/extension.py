"""Putting a pruned component back into a 1-queue layout.

Given a valid 1-queue layout of ``G - B`` and components equivalent to ``B``
that are still present, the components are first grouped by how their
vertices interleave with the anchor path (order-equivalence). Inside such a
group two *delimiting* components ``C_x`` and ``C_y`` cross each other on every
internal edge; ``C_x`` is cut into blocks and each block of ``B`` is placed
right before the ``C_y`` copy of the block's first vertex. Every vertex of ``B``
then lies strictly between its ``C_x`` and ``C_y`` counterparts, and the result
is again a 1-queue layout.

Components in a group are *aligned*: each member is a tuple of its vertices in
layout order, and index ``a`` of one member corresponds to index ``a`` of any
other (order-equivalent members are isomorphic through exactly that map).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Sequence

from ..errors import InternalError, LayoutError
from ..graph import Edge, Graph, edge_key
from ..layout import LinearLayout, validate_layout
from .components import AnchoredComponent, renaming


class PairKind(Enum):
    SEPARATE = "separate"
    INTERLEAVING = "interleaving"
    NESTING = "nesting"


@dataclass(frozen=True)
class AlignedFamily:
    """Order-equivalent components sharing one template."""

    path: tuple[int, ...]
    edges: tuple[Edge, ...]  # template indices, (left, right) in layout order
    members: tuple[tuple[int, ...], ...]  # sorted by position of first vertex


def _order_key(pos: Mapping[int, int], c: AnchoredComponent):
    inside = sorted(c.vertices, key=pos.__getitem__)
    local = {v: i for i, v in enumerate(inside)}
    path_index = {p: i for i, p in enumerate(c.path)}
    merged = sorted(list(c.path) + inside, key=pos.__getitem__)
    pattern = tuple(path_index.get(v, -1) for v in merged)
    edges = tuple(sorted(edge_key(local[u], local[w]) for u, w in c.internal_edges))
    attach = tuple(c.attachment_indices(v) for v in inside)
    return (pattern, edges, attach), tuple(inside)


def order_classes(pos: Mapping[int, int], comps: Sequence[AnchoredComponent]) -> list[AlignedFamily]:
    """Split equivalent components into order-equivalence classes, largest first."""
    groups: dict[tuple, list[tuple[int, ...]]] = {}
    path = None
    for c in comps:
        path = c.path
        key, members = _order_key(pos, c)
        groups.setdefault(key, []).append(members)
    families = []
    for (pattern, edges, _), members in groups.items():
        members.sort(key=lambda m: pos[m[0]])
        families.append(AlignedFamily(path, edges, tuple(members)))
    families.sort(key=lambda f: (-len(f.members), pos[f.members[0][0]]))
    return families


def classify_pair(pos: Mapping[int, int], ci: Sequence[int], cj: Sequence[int], v: int, w: int, *, edge: bool = False) -> PairKind:
    """How segment ``ci[v] ci[w]`` sits against its counterpart ``cj[v] cj[w]``.

    With ``edge=True`` the two segments are edges of the layout, and nesting
    would be a layout violation; it is reported as an error.
    """
    a, b = sorted((pos[ci[v]], pos[ci[w]]))
    if (pos[ci[v]] < pos[ci[w]]) != (pos[cj[v]] < pos[cj[w]]):
        raise LayoutError("components are not order-equivalent: endpoints appear in different orders")
    c, d = sorted((pos[cj[v]], pos[cj[w]]))
    if b < c or d < a:
        return PairKind.SEPARATE
    if (a < c < b < d) or (c < a < d < b):
        return PairKind.INTERLEAVING
    if edge:
        raise LayoutError(
            f"edges {ci[v]}-{ci[w]} and {cj[v]}-{cj[w]} nest; the layout or the order classes are inconsistent"
        )
    return PairKind.NESTING


def delimiting_sequence(pos: Mapping[int, int], family: AlignedFamily, edge: Edge) -> tuple[list[int], list[int]]:
    """The D-sequence for one template edge and the D-index each member is assigned to.

    Members are referred to by index into ``family.members``.
    """
    v, w = edge
    members = family.members
    by_v = sorted(range(len(members)), key=lambda q: pos[members[q][v]])
    seq = [by_v[0]]
    for q in by_v[1:]:
        last = members[seq[-1]]
        if classify_pair(pos, last, members[q], v, w, edge=True) is PairKind.SEPARATE:
            seq.append(q)
    assigned = [0] * len(members)
    ell = 0
    for q in by_v:
        while ell + 1 < len(seq) and pos[members[seq[ell + 1]][v]] <= pos[members[q][v]]:
            ell += 1
        assigned[q] = ell
    return seq, assigned


def find_delimiting_pair(pos: Mapping[int, int], family: AlignedFamily) -> tuple[int, int] | None:
    """Indices ``(x, y)`` of two members assigned together for every template edge.

    The pair is oriented so that member ``x`` is left of member ``y`` on every
    vertex; a pair that is not consistently oriented means the input layout
    is not a valid 1-queue layout, and ``LayoutError`` is raised.
    """
    buckets: dict[tuple[int, ...], list[int]] = {}
    assignments = [delimiting_sequence(pos, family, e)[1] for e in family.edges]
    for q in range(len(family.members)):
        buckets.setdefault(tuple(a[q] for a in assignments), []).append(q)
    for group in sorted(buckets.values()):
        if len(group) >= 2:
            x, y = group[0], group[1]
            cx, cy = family.members[x], family.members[y]
            if pos[cx[0]] > pos[cy[0]]:
                x, y, cx, cy = y, x, cy, cx
            if any(pos[a] > pos[b] for a, b in zip(cx, cy)):
                raise LayoutError("delimiting components are not consistently oriented")
            return x, y
    return None


def _block_ok(g: Graph, pos: Mapping[int, int], block: list[int], twin: Mapping[int, int]) -> bool:
    lo = min(pos[v] for v in block)
    hi = max(pos[v] for v in block)
    if any(lo < pos[twin[v]] < hi for v in block):
        return False
    # only neighbours inside the component count; edges to the anchor path do not
    lefts = {v for v in block if any(w in twin and pos[w] < pos[v] for w in g.adj[v])}
    rights = {v for v in block if any(w in twin and pos[w] > pos[v] for w in g.adj[v])}
    if not lefts or not rights:
        return True
    return len(lefts) == 1 and lefts == rights


def blocks_of(g: Graph, pos: Mapping[int, int], cx: Sequence[int], cy: Sequence[int]) -> list[tuple[int, ...]]:
    """Cut ``cx`` into maximal runs of consecutive vertices forming blocks.

    A block contains no counterpart (in ``cy``) of its own vertices between
    two of its vertices, and never holds one vertex with a neighbour to its
    left together with another vertex with a neighbour to its right
    (neighbours inside ``cx``).
    """
    if any(pos[a] > pos[b] for a, b in zip(cx, cy)):
        raise LayoutError("every vertex of C_x must precede its counterpart in C_y")
    twin = dict(zip(cx, cy))
    order = sorted(cx, key=pos.__getitem__)
    blocks: list[tuple[int, ...]] = []
    current = [order[0]]
    for v in order[1:]:
        if _block_ok(g, pos, current + [v], twin):
            current.append(v)
        else:
            blocks.append(tuple(current))
            current = [v]
    blocks.append(tuple(current))
    return blocks


def extend_layout(
    g: Graph,
    layout: LinearLayout,
    removed: Sequence[int],
    cx: Sequence[int],
    cy: Sequence[int],
    to_removed: Mapping[int, int],
) -> LinearLayout:
    """Insert ``removed`` into a 1-queue layout of ``g - removed``.

    ``cx``/``cy`` are an oriented delimiting pair (aligned), and
    ``to_removed`` maps each vertex of ``cx`` to its counterpart in the
    removed component. The result is validated; a failure raises
    ``InternalError``.
    """
    pos = layout.position
    if set(removed) & set(pos):
        raise LayoutError("the removed component is already placed")
    if len(cx) != len(cy) or sorted(to_removed) != sorted(cx) or sorted(to_removed.values()) != sorted(removed):
        raise LayoutError("delimiting pair and removed component do not correspond")
    if layout.num_queues > 1:
        raise LayoutError("extension only applies to 1-queue layouts")
    blocks = blocks_of(g, pos, cx, cy)
    twin = dict(zip(cx, cy))
    before: dict[int, list[int]] = {}
    for block in blocks:
        before[twin[block[0]]] = [to_removed[v] for v in block]
    order: list[int] = []
    for v in layout.order:
        order.extend(before.get(v, ()))
        order.append(v)
    sigma = dict(layout.sigma)
    placed = set(order)
    for b in removed:
        for w in g.adj[b]:
            if w in placed:
                sigma[edge_key(b, w)] = 1
    result = LinearLayout(tuple(order), sigma, 1 if sigma else layout.num_queues)
    violation = validate_layout(g, result, partial=len(order) != g.n)
    if violation is not None:
        raise InternalError(f"extended layout is invalid: {violation}")
    return result


def lift_component(
    g: Graph,
    layout: LinearLayout,
    b: AnchoredComponent,
    siblings: Sequence[AnchoredComponent],
) -> LinearLayout | None:
    """Reinsert component ``b`` using order classes of its equivalent ``siblings``.

    Returns ``None`` when no order class contains a delimiting pair.
    """
    pos = layout.position
    for family in order_classes(pos, siblings):
        pair = find_delimiting_pair(pos, family)
        if pair is None:
            continue
        cx, cy = family.members[pair[0]], family.members[pair[1]]
        comp_x = next(c for c in siblings if set(c.vertices) == set(cx))
        eta = renaming(comp_x, b)
        if eta is None:
            raise LayoutError("sibling is not equivalent to the removed component")
        return extend_layout(g, layout, b.vertices, cx, cy, eta)
    return None
