"""Pruning equivalent components below a treedepth decomposition, and 1-queue decisions.

Levels count from the bottom of the decomposition: a vertex at depth ``d`` of a
height-``k`` decomposition sits at level ``i = k - d + 1``, so leaves of a
full-height branch are level 1 and their parents level 2.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from ..errors import CapacityError, GraphError, QLayoutError
from ..graph import Graph, VertexSet, induced_subgraph
from ..layout import LinearLayout, validate_layout
from ..params import TreedepthDecomposition, treedepth
from .components import (
    CANON_CAP,
    AnchoredComponent,
    ComponentSignature,
    decompose_at,
    equivalence_classes,
)
from .extension import lift_component
from .thresholds import Thresholds

log = logging.getLogger(__name__)

BRUTE_FORCE_CAP = 12
FALLBACK_CAP = 40


@dataclass(frozen=True)
class Pruning:
    """One application of the pruning rule, expressed in the ids of the input graph."""

    graph: Graph  # G - B
    kept: VertexSet  # id in ``graph`` -> id in the input graph
    removed: AnchoredComponent
    level: int
    class_size: int
    signature: ComponentSignature


@dataclass(frozen=True)
class RemovalRecord:
    anchor: int
    level: int
    removed: VertexSet
    class_size: int

    def to_dict(self, g: Graph) -> dict:
        lab = g.labels
        return {
            "anchor": lab[self.anchor],
            "depth": self.level,
            "removed": [lab[v] for v in self.removed],
            "class_size": self.class_size,
        }


@dataclass
class TDKernel:
    graph: Graph
    kept: VertexSet  # kernel id -> input id
    decomposition: TreedepthDecomposition  # over kernel ids
    height: int  # k used for the thresholds
    log: list[RemovalRecord] = field(default_factory=list)

    def log_dicts(self, g: Graph) -> list[dict]:
        return [r.to_dict(g) for r in self.log]


@dataclass
class OneQueueDecision:
    answer: bool
    layout: LinearLayout | None
    kernel: TDKernel
    lifted_by: list[str] = field(default_factory=list)


def level_of(td: TreedepthDecomposition, t: int, k: int) -> int:
    return k - len(td.ancestors(t)) + 1


def anchored_counts(g: Graph, td: TreedepthDecomposition) -> list[int]:
    """Number of anchored components of every decomposition vertex."""
    return [len(decompose_at(g, td, t)[0]) for t in g.vertices]


def prune_once(
    g: Graph,
    td: TreedepthDecomposition,
    t: int,
    thresholds: Thresholds,
    *,
    k: int | None = None,
    counts: list[int] | None = None,
    canon_cap: int = CANON_CAP,
) -> Pruning | None:
    """Remove one component below ``t`` if the pruning hypotheses hold, else ``None``.

    Hypotheses at level ``i``: at least children(k, i) anchored components,
    none larger than size(k, i), and every descendant of ``t`` with at most
    children(k, i-1) anchored components. The removed component comes from an
    equivalence class with at least class_fn(k, i) members; ties go to the
    smallest signature, then the component with the smallest vertex id.
    """
    k = td.height if k is None else k
    i = level_of(td, t, k)
    if i < 2:
        return None
    comps, m_t = decompose_at(g, td, t)
    if not comps or len(comps) < thresholds.children_fn(k, i) or m_t > thresholds.size_fn(k, i):
        return None
    if counts is None:
        counts = anchored_counts(g, td)
    below = thresholds.children_fn(k, i - 1)
    if any(counts[q] > below for q in td.descendants(t)):
        return None
    need = thresholds.class_fn(k, i)
    classes = equivalence_classes(comps, canon_cap)
    eligible = sorted(sig for sig, members in classes.items() if len(members) >= max(need, 1))
    if not eligible:
        return None
    sig = eligible[0]
    members = classes[sig]
    victim = min(members, key=lambda c: c.vertices[0])
    gone = set(victim.vertices)
    sub, kept = induced_subgraph(g, [v for v in g.vertices if v not in gone])
    return Pruning(sub, kept, victim, i, len(members), sig)


def kernelize_1queue(
    g: Graph,
    thresholds: Thresholds,
    td: TreedepthDecomposition | None = None,
    *,
    canon_cap: int = CANON_CAP,
) -> TDKernel:
    """Prune bottom-up (deepest levels first), restarting after every removal."""
    if not g.is_connected():
        raise GraphError("kernelize_1queue() needs a connected graph")
    if td is None:
        td = treedepth(g, g.n)
    if td.closure_violations(g):
        raise GraphError("decomposition does not cover every edge of the graph")
    k = td.height
    cur, cur_td = g, td
    kept: tuple[int, ...] = tuple(g.vertices)
    records: list[RemovalRecord] = []
    while True:
        fired = None
        if cur.n:
            depth = cur_td.depth
            counts = anchored_counts(cur, cur_td)
            for d in range(k - 1, 0, -1):
                for t in (v for v in cur.vertices if depth[v] == d):
                    fired = prune_once(cur, cur_td, t, thresholds, k=k, counts=counts, canon_cap=canon_cap)
                    if fired is not None:
                        anchor = t
                        break
                if fired is not None:
                    break
        if fired is None:
            break
        records.append(
            RemovalRecord(
                anchor=kept[anchor],
                level=fired.level,
                removed=tuple(kept[v] for v in fired.removed.vertices),
                class_size=fired.class_size,
            )
        )
        log.debug("pruned %s below %s", records[-1].removed, records[-1].anchor)
        cur_td = cur_td.restrict(fired.kept)
        kept = tuple(kept[v] for v in fired.kept)
        cur = fired.graph
    return TDKernel(cur, kept, cur_td, k, records)


# -- exhaustive 1-queue search -------------------------------------------------


def _twin_classes(g: Graph) -> list[int]:
    """For each vertex, the next-smaller vertex it is interchangeable with (or -1)."""
    groups: dict[tuple, list[int]] = {}
    for v in g.vertices:
        groups.setdefault(("open", g.adj[v]), []).append(v)
        groups.setdefault(("closed", tuple(sorted(g.adj[v] + (v,)))), []).append(v)
    prev = [-1] * g.n
    for members in groups.values():
        for a, b in zip(members, members[1:]):
            prev[b] = max(prev[b], a)
    return prev


def one_queue_order(g: Graph, cap: int | None = BRUTE_FORCE_CAP) -> tuple[int, ...] | None:
    """A vertex order admitting a 1-queue layout, or ``None``. Exhaustive with prefix pruning.

    A prefix is abandoned as soon as a nesting pair is forced: either an edge
    that just closed encloses an earlier closed edge, or an edge still open
    on its left end will enclose an edge that just closed.
    """
    if cap is not None and g.n > cap:
        raise CapacityError(f"exhaustive 1-queue search capped at {cap} vertices, graph has {g.n}")
    n = g.n
    prev_twin = _twin_classes(g)
    pos = [-1] * n
    order: list[int] = []
    unplaced_nbrs = [g.degree(v) for v in g.vertices]

    def search(max_closed_left: int) -> bool:
        if len(order) == n:
            return True
        p = len(order)
        placed_adj = [v for v in range(n) if pos[v] < 0 and any(pos[w] >= 0 for w in g.adj[v])]
        rest = [v for v in range(n) if pos[v] < 0 and v not in placed_adj]
        for x in placed_adj + rest:
            if prev_twin[x] >= 0 and pos[prev_twin[x]] < 0:
                continue
            ys = [pos[w] for w in g.adj[x] if pos[w] >= 0]
            if ys:
                far = max(ys)
                if min(ys) < max_closed_left:
                    continue
                open_left = min(
                    (pos[u] for u in order if unplaced_nbrs[u] - (1 if g.has_edge(u, x) else 0) > 0),
                    default=n,
                )
                if open_left < far:
                    continue
            pos[x] = p
            order.append(x)
            for w in g.adj[x]:
                unplaced_nbrs[w] -= 1
            new_left = max([max_closed_left] + ys)
            if search(new_left):
                return True
            for w in g.adj[x]:
                unplaced_nbrs[w] += 1
            order.pop()
            pos[x] = -1
        return False

    return tuple(order) if search(-1) else None


def _one_queue_layout(g: Graph, order) -> LinearLayout:
    return LinearLayout(tuple(order), {e: 1 for e in g.edges}, 1 if g.edges else 0)


def decide_1queue_td(
    g: Graph,
    thresholds: Thresholds | None = None,
    td: TreedepthDecomposition | None = None,
    *,
    brute_force_cap: int = BRUTE_FORCE_CAP,
    fallback_cap: int = FALLBACK_CAP,
    canon_cap: int = CANON_CAP,
) -> OneQueueDecision:
    """Decide whether ``g`` has a 1-queue layout via the kernel, and lift a witness back.

    The decision is taken on the kernel. A yes-witness is lifted one removed
    component at a time through the delimiting-pair construction; where no
    delimiting pair exists the intermediate graph is searched exhaustively
    instead (capped by ``fallback_cap``).
    """
    thresholds = thresholds or Thresholds.paper()
    if td is None:
        td = treedepth(g, g.n)
    kernel = kernelize_1queue(g, thresholds, td, canon_cap=canon_cap)
    if kernel.graph.n > brute_force_cap:
        raise CapacityError(
            f"kernel has {kernel.graph.n} vertices, above the brute-force cap {brute_force_cap}; "
            "paper thresholds only prune astronomically large inputs, try --thresholds=synthetic:<list>"
        )
    found = one_queue_order(kernel.graph, cap=None)
    if found is None:
        return OneQueueDecision(False, None, kernel)
    layout = _one_queue_layout(kernel.graph, found).relabel(kernel.kept)
    alive = set(kernel.kept)
    methods: list[str] = []
    for record in reversed(kernel.log):
        alive |= set(record.removed)
        layout, how = _lift(g, td, alive, layout, record, fallback_cap, canon_cap)
        methods.append(how)
    methods.reverse()
    final = validate_layout(g, layout)
    if final is not None:
        raise QLayoutError(f"lifted layout is invalid: {final}")
    return OneQueueDecision(True, layout, kernel, methods)


def _lift(g, td, alive, layout, record, fallback_cap, canon_cap):
    keep = sorted(alive)
    sub, _ = induced_subgraph(g, keep)
    local = {v: i for i, v in enumerate(keep)}
    sub_layout = layout.relabel(local)
    sub_td = td.restrict(keep)
    comps, _ = decompose_at(sub, sub_td, local[record.anchor])
    removed = {local[v] for v in record.removed}
    b = next((c for c in comps if set(c.vertices) == removed), None)
    lifted = None
    if b is not None:
        classes = equivalence_classes(comps, canon_cap)
        siblings = [c for sig, members in classes.items() if b in members for c in members if c is not b]
        if siblings:
            lifted = lift_component(sub, sub_layout, b, siblings)
    how = "extension"
    if lifted is None:
        how = "search"
        order = one_queue_order(sub, cap=fallback_cap)
        if order is None:
            raise QLayoutError(
                "the kernel is 1-queue but an intermediate graph is not: "
                "the synthetic thresholds pruned unsoundly on this input"
            )
        lifted = _one_queue_layout(sub, order)
    return lifted.relabel(keep), how
