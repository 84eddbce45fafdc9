"""Queue number by vertex-cover kernelisation.

Vertices outside a cover ``C`` are grouped by their exact neighbourhood
``U`` (their *type*). If a type class holds more than ``2 * h**|C| + 1``
vertices, any one of them can be dropped without changing whether ``h``
queues suffice, and a layout of the smaller graph is repaired by slotting the
dropped vertex in right after a suitable class member. The kernel is solved by
trying vertex orders in which members of one class are interchangeable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import GraphError, InternalError, LayoutError
from .graph import Edge, Graph, VertexSet, edge_key, induced_subgraph, vertex_set
from .layout import LinearLayout, min_queues_for_order, validate_layout
from .params import VertexCoverCertificate, min_vertex_cover


@dataclass(frozen=True)
class TypeClass:
    neighborhood: VertexSet  # U, a subset of the cover
    members: tuple[int, ...]  # increasing ids


@dataclass(frozen=True)
class TrimRecord:
    neighborhood: VertexSet
    removed: int
    class_size: int  # size of the class just before this removal
    bound: int

    def to_dict(self, g: Graph) -> dict:
        lab = g.labels
        return {
            "type": [lab[w] for w in self.neighborhood],
            "removed": [lab[self.removed]],
            "class_size": self.class_size,
            "bound": self.bound,
        }


@dataclass
class VCKernel:
    graph: Graph
    kept: VertexSet  # kernel id -> input id
    cover: VertexSet  # in kernel ids
    h: int
    bound: int
    log: list[TrimRecord] = field(default_factory=list)


def _check_cover(g: Graph, cover: Iterable[int]) -> tuple[int, ...]:
    cover = tuple(cover)
    inside = set(cover)
    if len(inside) != len(cover) or any(not 0 <= c < g.n for c in cover):
        raise GraphError("cover must list distinct vertices of the graph")
    for u, v in g.edges:
        if u not in inside and v not in inside:
            raise GraphError(f"edge ({u}, {v}) is not covered")
    return cover


def _cover_ids(cover) -> tuple[int, ...]:
    if isinstance(cover, VertexCoverCertificate):
        return cover.cover
    return tuple(cover)


def construct_tau_layout(g: Graph, cover) -> LinearLayout:
    """|C|-queue layout: cover vertices first, in the given order; queue i holds edges to c_i from earlier vertices."""
    cover = _check_cover(g, _cover_ids(cover))
    rank = {c: i for i, c in enumerate(cover, start=1)}
    rest = [v for v in g.vertices if v not in rank]
    order = list(cover) + rest
    sigma = {}
    for u, v in g.edges:
        sigma[(u, v)] = max(rank.get(u, 0), rank.get(v, 0))
    layout = LinearLayout(tuple(order), sigma, len(cover))
    bad = validate_layout(g, layout)
    if bad is not None:
        raise InternalError(f"cover layout is invalid: {bad}")
    return layout


def type_partition(g: Graph, cover) -> list[TypeClass]:
    """Non-cover vertices grouped by exact neighbourhood, ordered by (|U|, U)."""
    cover = _check_cover(g, _cover_ids(cover))
    inside = set(cover)
    groups: dict[VertexSet, list[int]] = {}
    for v in g.vertices:
        if v not in inside:
            groups.setdefault(g.adj[v], []).append(v)
    return [TypeClass(u, tuple(groups[u])) for u in sorted(groups, key=lambda u: (len(u), u))]


def class_bound(h: int, tau: int) -> int:
    return 2 * h**tau + 1


def build_vc_kernel(g: Graph, cover, h: int) -> VCKernel:
    """Trim every type class down to ``2 * h**tau + 1`` members, largest ids first."""
    if h < 1:
        raise ValueError("h must be at least 1")
    cover = _check_cover(g, _cover_ids(cover))
    bound = class_bound(h, len(cover))
    log: list[TrimRecord] = []
    drop: set[int] = set()
    for cls in type_partition(g, cover):
        members = list(cls.members)
        while len(members) > bound:
            victim = members.pop()
            log.append(TrimRecord(cls.neighborhood, victim, len(members) + 1, bound))
            drop.add(victim)
    sub, kept = induced_subgraph(g, [v for v in g.vertices if v not in drop])
    where = {v: i for i, v in enumerate(kept)}
    return VCKernel(sub, kept, tuple(where[c] for c in cover), h, bound, log)


# -- solving the kernel --------------------------------------------------------


def _forced_rainbow_search(g: Graph, slots: list[list[int]], h: int) -> tuple[int, ...] | None:
    """DFS over orders choosing one slot at a time; members inside a slot keep id order.

    A prefix is cut once it forces more than ``h`` queues: ``down[e]`` is the
    longest nesting chain among closed edges with ``e`` outermost, and an edge
    still open at its left end adds one more level above every closed edge
    starting to its right. For ``h = 1`` two open vertices ``u`` before ``v``
    also force every pending neighbour of ``u`` to precede every other pending
    neighbour of ``v``; a cycle among those demands kills the prefix.
    """
    n = g.n
    pos = [-1] * n
    order: list[int] = []
    remaining = [list(s) for s in slots]
    closed: list[tuple[int, int]] = []  # (left position, chain length)
    unplaced = [g.degree(v) for v in g.vertices]

    def chains_right_of(p: int) -> list[int]:
        # best[i] = longest closed chain whose outer edge starts at position >= i
        best = [0] * (p + 2)
        for left, d in closed:
            best[left] = max(best[left], d)
        for i in range(p - 1, -1, -1):
            best[i] = max(best[i], best[i + 1])
        return best

    def pending_cycle() -> bool:
        waiting = [[w for w in g.adj[u] if pos[w] < 0] for u in order if unplaced[u] > 0]
        after: dict[int, set[int]] = {}
        for i, early in enumerate(waiting):
            for late in waiting[i + 1 :]:
                for a in early:
                    after.setdefault(a, set()).update(b for b in late if b != a)
        state: dict[int, int] = {}

        def cyclic(x) -> bool:
            state[x] = 1
            for y in after.get(x, ()):
                if state.get(y) == 1 or (y not in state and cyclic(y)):
                    return True
            state[x] = 2
            return False

        return any(x not in state and cyclic(x) for x in list(after))

    def search() -> bool:
        if len(order) == n:
            return True
        p = len(order)
        best = chains_right_of(p)
        for s, pool in enumerate(remaining):
            if not pool:
                continue
            x = pool[0]
            lefts = sorted(pos[w] for w in g.adj[x] if pos[w] >= 0)
            fresh = [(y, 1 + best[y + 1]) for y in lefts]
            if any(d > h for _, d in fresh):
                continue
            pool.pop(0)
            pos[x] = p
            order.append(x)
            mark = len(closed)
            closed.extend(fresh)
            for w in g.adj[x]:
                unplaced[w] -= 1
            after_x = chains_right_of(p + 1)
            ok = all(1 + after_x[pos[u] + 1] <= h for u in order if unplaced[u] > 0)
            if ok and h == 1:
                ok = not pending_cycle()
            if ok and search():
                return True
            for w in g.adj[x]:
                unplaced[w] += 1
            del closed[mark:]
            order.pop()
            pos[x] = -1
            pool.insert(0, x)
        return False

    return tuple(order) if search() else None


def solve_kernel(gstar: Graph, cover, h: int) -> LinearLayout | None:
    """An ``h``-queue layout of ``gstar`` or ``None``, trying orders modulo same-type swaps."""
    cover = _check_cover(gstar, _cover_ids(cover))
    if not gstar.edges:
        return LinearLayout(tuple(gstar.vertices), {}, max(h, 0))
    if h < 1:
        return None
    slots = [[c] for c in cover] + [list(t.members) for t in type_partition(gstar, cover)]
    order = _forced_rainbow_search(gstar, slots, h)
    if order is None:
        return None
    layout = min_queues_for_order(gstar, order)
    if layout.num_queues > h:
        raise InternalError("order search accepted an order needing more than h queues")
    return LinearLayout(layout.order, layout.sigma, h)


# -- lifting -------------------------------------------------------------------


def queue_signature(layout: LinearLayout, u: int, neighborhood: Sequence[int]) -> tuple[int, ...]:
    return tuple(layout.queue(u, w) for w in neighborhood)


def extend_vc_layout(layout: LinearLayout, g: Graph, v: int, neighborhood: Sequence[int] | None = None) -> LinearLayout:
    """Put ``v`` back into a valid layout of ``g - v`` given in ``g``'s ids.

    Members of ``v``'s type are grouped by the queues of their edges; ``v``
    goes immediately right of the leftmost member of a group with at least
    three members and copies that member's queue for each edge.
    """
    pos = layout.position
    if v in pos:
        raise LayoutError(f"vertex {v} is already placed")
    U = tuple(sorted(g.adj[v] if neighborhood is None else neighborhood))
    if U != g.adj[v]:
        raise GraphError(f"vertex {v} does not have neighbourhood {U}")
    if any(w not in pos for w in U):
        raise LayoutError("neighbours of the reinserted vertex must already be placed")
    members = sorted((u for u in pos if u not in U and g.adj[u] == U), key=pos.__getitem__)
    groups: dict[tuple[int, ...], list[int]] = {}
    for u in members:
        groups.setdefault(queue_signature(layout, u, U), []).append(u)
    big = [grp for grp in groups.values() if len(grp) >= 3]
    if not big:
        raise LayoutError(f"no three queue-equivalent vertices of type {U}; the class is too small to trim")
    anchor = min((grp[0] for grp in big), key=pos.__getitem__)
    at = pos[anchor] + 1
    order = layout.order[:at] + (v,) + layout.order[at:]
    sigma = dict(layout.sigma)
    for w in U:
        sigma[edge_key(v, w)] = layout.queue(anchor, w)
    result = LinearLayout(order, sigma, layout.num_queues)
    bad = validate_layout(g, result, partial=len(order) != g.n)
    if bad is not None:
        raise InternalError(f"reinsertion of {v} produced a nesting pair: {bad}")
    return result


@dataclass
class QueueNumberResult:
    h: int
    layout: LinearLayout
    cover: VertexSet
    kernel_sizes: dict[int, int] = field(default_factory=dict)


def queue_number_vc(g: Graph) -> QueueNumberResult:
    """Minimum queue number of a connected graph, with a witness layout."""
    if g.n and not g.is_connected():
        raise GraphError("queue_number_vc() needs a connected graph; solve components separately")
    cert = min_vertex_cover(g)
    cover = cert.cover
    tau = len(cover)
    if tau == 0:
        return QueueNumberResult(0, LinearLayout(tuple(g.vertices), {}, 0), cover)
    lo, hi = 1, tau
    best: tuple[int, VCKernel, LinearLayout] | None = None
    sizes: dict[int, int] = {}
    while lo < hi:
        mid = (lo + hi) // 2
        kernel = build_vc_kernel(g, cover, mid)
        sizes[mid] = kernel.graph.n
        found = solve_kernel(kernel.graph, kernel.cover, mid)
        if found is not None:
            hi = mid
            best = (mid, kernel, found)
        else:
            lo = mid + 1
    if best is None or best[0] != lo:
        # only the upper anchor is left; the cover layout realises it
        return QueueNumberResult(lo, construct_tau_layout(g, cover), cover, sizes)
    h, kernel, layout = best
    layout = lift_vc_layout(g, kernel, layout)
    return QueueNumberResult(h, layout, cover, sizes)


def lift_vc_layout(g: Graph, kernel: VCKernel, layout: LinearLayout) -> LinearLayout:
    """Reinsert trimmed vertices in reverse trim order."""
    layout = layout.relabel(kernel.kept)
    for record in reversed(kernel.log):
        layout = extend_vc_layout(layout, g, record.removed, record.neighborhood)
    return layout


def k33_violations(g: Graph, layout: LinearLayout, cover) -> list[tuple[int, tuple[int, ...], tuple[int, ...]]]:
    """Queues containing three queue-equivalent same-type vertices with three common neighbours.

    Such a K_{3,3} inside one queue is impossible in a valid layout; the list
    should always be empty.
    """
    out = []
    for cls in type_partition(g, cover):
        if len(cls.neighborhood) < 3 or len(cls.members) < 3:
            continue
        groups: dict[tuple[int, ...], list[int]] = {}
        for u in cls.members:
            groups.setdefault(queue_signature(layout, u, cls.neighborhood), []).append(u)
        for sig, grp in groups.items():
            if len(grp) < 3:
                continue
            per_queue: dict[int, list[int]] = {}
            for w, q in zip(cls.neighborhood, sig):
                per_queue.setdefault(q, []).append(w)
            for q, ws in per_queue.items():
                if len(ws) >= 3:
                    out.append((q, tuple(grp[:3]), tuple(ws[:3])))
    return out
