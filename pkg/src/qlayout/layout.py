"""Linear layouts: a vertex order plus a queue index for every edge.

Queue indices are 1-based. Two edges *nest* under an order when their four
endpoints are distinct and one edge's endpoints strictly enclose the other's.
For a fixed order the least number of queues equals the longest chain in the
nesting partial order (a maximum rainbow), and giving each edge 1 + the length
of the longest chain strictly inside it realises that bound.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import LayoutError, ParseError
from .graph import Edge, Graph, edge_key


@dataclass(frozen=True)
class LinearLayout:
    order: tuple[int, ...]
    sigma: Mapping[Edge, int]
    num_queues: int
    position: dict[int, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))
        object.__setattr__(self, "sigma", {edge_key(*e): q for e, q in self.sigma.items()})
        object.__setattr__(self, "position", {v: i for i, v in enumerate(self.order)})

    def queue(self, u: int, v: int) -> int:
        return self.sigma[edge_key(u, v)]

    def queues(self) -> dict[int, list[Edge]]:
        """Edges grouped by queue, each group sorted by position of its left endpoint."""
        pos = self.position
        out: dict[int, list[Edge]] = {q: [] for q in range(1, self.num_queues + 1)}
        for e, q in self.sigma.items():
            out.setdefault(q, []).append(e)
        for q in out:
            out[q].sort(key=lambda e: _span(pos, e))
        return out

    def relabel(self, mapping: Sequence[int] | Mapping[int, int]) -> "LinearLayout":
        """Rename vertices, e.g. from kernel ids back to parent-graph ids."""
        return LinearLayout(
            tuple(mapping[v] for v in self.order),
            {edge_key(mapping[u], mapping[v]): q for (u, v), q in self.sigma.items()},
            self.num_queues,
        )


@dataclass(frozen=True)
class Violation:
    """Two independent edges that share a queue and nest."""

    queue: int
    outer: Edge
    inner: Edge


@dataclass(frozen=True)
class Rainbow:
    """Pairwise nesting, pairwise independent edges, listed outermost first."""

    edges: tuple[Edge, ...]

    @property
    def size(self) -> int:
        return len(self.edges)


def _span(pos: Mapping[int, int], e: Edge) -> tuple[int, int]:
    a, b = pos[e[0]], pos[e[1]]
    return (a, b) if a < b else (b, a)


def _encloses(pos: Mapping[int, int], outer: Edge, inner: Edge) -> bool:
    a, b = _span(pos, outer)
    c, d = _span(pos, inner)
    return a < c and d < b


def nest(pos: Mapping[int, int], e1: Edge, e2: Edge) -> bool:
    """``edges_nest`` on a precomputed vertex -> position map."""
    return _encloses(pos, e1, e2) or _encloses(pos, e2, e1)


def edges_nest(order: Sequence[Hashable], e1: tuple, e2: tuple) -> bool:
    """True iff the two edges have four distinct endpoints and one encloses the other.

    >>> edges_nest("abcd", ("a", "d"), ("b", "c"))
    True
    >>> edges_nest("abcd", ("a", "c"), ("b", "d"))
    False
    """
    pos = {v: i for i, v in enumerate(order)}
    return nest(pos, e1, e2)


def _check_structure(g: Graph, layout: LinearLayout, partial: bool) -> list[Edge]:
    order = layout.order
    if len(set(order)) != len(order):
        raise LayoutError("order repeats a vertex")
    for v in order:
        if not 0 <= v < g.n:
            raise LayoutError(f"order contains unknown vertex {v}")
    if not partial and len(order) != g.n:
        raise LayoutError(f"order has {len(order)} vertices, graph has {g.n}")
    placed = layout.position
    expected = [e for e in g.edges if e[0] in placed and e[1] in placed]
    for e in expected:
        if e not in layout.sigma:
            raise LayoutError(f"edge {e} has no queue")
    if len(layout.sigma) != len(expected):
        extra = sorted(set(layout.sigma) - set(expected))
        raise LayoutError(f"queue map lists non-edges {extra[:3]}")
    if expected and layout.num_queues < 1:
        raise LayoutError("a layout of a graph with edges needs at least one queue")
    for e, q in layout.sigma.items():
        if not 1 <= q <= layout.num_queues:
            raise LayoutError(f"edge {e} assigned to queue {q} outside 1..{layout.num_queues}")
    return expected


def validate_layout(g: Graph, layout: LinearLayout, *, partial: bool = False) -> Violation | None:
    """Return ``None`` for a valid queue layout, else one nesting pair in a shared queue.

    Structural problems (order not a permutation, unassigned edges, queue
    index out of range) raise ``LayoutError`` instead. With ``partial=True``
    the order may cover a subset of the vertices; the induced edges are checked.
    """
    _check_structure(g, layout, partial)
    pos = layout.position
    for q, edges in sorted(layout.queues().items()):
        # sorted by left endpoint: an enclosing edge always precedes what it encloses
        for i, outer in enumerate(edges):
            a, b = _span(pos, outer)
            for inner in edges[i + 1:]:
                c, d = _span(pos, inner)
                if c >= b:
                    break
                if a < c and d < b:
                    return Violation(q, outer, inner)
    return None


def _chain_lengths(edges: Iterable[Edge], pos: Mapping[int, int]) -> dict[Edge, int]:
    """For each edge, the longest nesting chain having it as the outermost edge."""
    by_width = sorted(edges, key=lambda e: (abs(pos[e[0]] - pos[e[1]]), _span(pos, e)))
    spans = [_span(pos, e) for e in by_width]
    down: list[int] = []
    for i, (a, b) in enumerate(spans):
        best = 0
        for j in range(i):
            c, d = spans[j]
            if a < c and d < b and down[j] > best:
                best = down[j]
        down.append(best + 1)
    return dict(zip(by_width, down))


def _positions(g: Graph, order: Sequence[int]) -> dict[int, int]:
    if sorted(order) != list(range(g.n)):
        raise LayoutError("order must be a permutation of the graph's vertices")
    return {v: i for i, v in enumerate(order)}


def max_rainbow(g: Graph, order: Sequence[int]) -> Rainbow:
    """A maximum rainbow under ``order``.

    Among maximum rainbows the one whose (outermost-first) list of edge
    position pairs is lexicographically smallest is returned.
    """
    pos = _positions(g, order)
    down = _chain_lengths(g.edges, pos)
    if not down:
        return Rainbow(())
    best = max(down.values())
    chain: list[Edge] = []
    need = best
    candidates = list(down)
    while need:
        cur = min((e for e in candidates if down[e] == need), key=lambda e: _span(pos, e))
        chain.append(cur)
        need -= 1
        candidates = [e for e in candidates if _encloses(pos, cur, e)]
    return Rainbow(tuple(chain))


def min_queues_for_order(g: Graph, order: Sequence[int]) -> LinearLayout:
    """Optimal queue assignment for a fixed vertex order."""
    pos = _positions(g, order)
    down = _chain_lengths(g.edges, pos)
    return LinearLayout(tuple(order), down, max(down.values(), default=0))


def num_queues_for_order(g: Graph, order: Sequence[int]) -> int:
    pos = _positions(g, order)
    return max(_chain_lengths(g.edges, pos).values(), default=0)


# -- serialisation -----------------------------------------------------------


def layout_to_dict(g: Graph, layout: LinearLayout) -> dict:
    lab = g.labels
    queues = {}
    for q, edges in sorted(layout.queues().items()):
        queues[str(q)] = [[lab[u], lab[v]] for u, v in (_oriented(layout.position, e) for e in edges)]
    return {"order": [lab[v] for v in layout.order], "queues": queues}


def _oriented(pos, e):
    u, v = e
    return (u, v) if pos[u] < pos[v] else (v, u)


def layout_to_json(g: Graph, layout: LinearLayout) -> str:
    return json.dumps(layout_to_dict(g, layout))


def layout_from_dict(g: Graph, doc: Mapping) -> LinearLayout:
    """Read a layout document against ``g``; labels are matched exactly or by ``str``.

    Raises ``ParseError`` for malformed documents and ``LayoutError`` when the
    document mentions vertices the graph does not have.
    """
    if not isinstance(doc, Mapping) or "order" not in doc or "queues" not in doc:
        raise ParseError("layout must be an object with 'order' and 'queues'")
    try:
        order = tuple(g.index_of(lab) for lab in doc["order"])
        sigma: dict[Edge, int] = {}
        for key, edges in doc["queues"].items():
            q = int(key)
            for pair in edges:
                if len(pair) != 2:
                    raise ParseError(f"queue {key}: edge entry {pair!r} is not a pair")
                e = edge_key(g.index_of(pair[0]), g.index_of(pair[1]))
                if e in sigma:
                    raise LayoutError(f"edge {pair!r} listed in more than one queue")
                sigma[e] = q
    except ValueError as exc:
        raise ParseError(f"bad queue key: {exc}") from exc
    except Exception as exc:
        if isinstance(exc, (ParseError, LayoutError)):
            raise
        raise LayoutError(str(exc)) from exc
    num = max([int(k) for k in doc["queues"]] + list(sigma.values()) + [0])
    return LinearLayout(order, sigma, num)


def layout_from_json(g: Graph, text: str) -> LinearLayout:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno) from exc
    return layout_from_dict(g, doc)


_PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)


def queue_color(q: int) -> str:
    return _PALETTE[(q - 1) % len(_PALETTE)]


def layout_to_svg(g: Graph, layout: LinearLayout, spacing: int = 48) -> str:
    """Arc diagram: vertices on a line in layout order, one colour per queue."""
    from xml.sax.saxutils import escape

    n = len(layout.order)
    pos = layout.position
    margin = spacing
    longest = max((abs(pos[u] - pos[v]) for u, v in layout.sigma), default=1)
    baseline = margin + longest * spacing // 2
    width = 2 * margin + max(n - 1, 0) * spacing
    height = baseline + margin
    x = lambda v: margin + pos[v] * spacing  # noqa: E731
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<line x1="{margin}" y1="{baseline}" x2="{width - margin}" y2="{baseline}" stroke="#cccccc"/>',
    ]
    for q, edges in sorted(layout.queues().items()):
        color = queue_color(q)
        out.append(f'<g class="queue" data-queue="{q}" stroke="{color}" fill="none" stroke-width="1.5">')
        for e in edges:
            u, v = _oriented(pos, e)
            r = (x(v) - x(u)) / 2
            out.append(f'<path d="M {x(u)} {baseline} A {r:g} {r:g} 0 0 1 {x(v)} {baseline}"/>')
        out.append("</g>")
    for v in layout.order:
        out.append(f'<circle cx="{x(v)}" cy="{baseline}" r="5" fill="#222222"/>')
        out.append(
            f'<text x="{x(v)}" y="{baseline + 20}" font-size="12" text-anchor="middle">'
            f"{escape(str(g.labels[v]))}</text>"
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
