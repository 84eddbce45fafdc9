"""Components hanging below a vertex of a treedepth decomposition, and their canonical forms.

For a decomposition vertex ``t`` let ``P_t`` be its root path. The components
of ``G - P_t`` that contain a child of ``t`` are the *anchored components* of
``t``. Two of them are equivalent when a bijection between them preserves both
internal adjacency and the set of ``P_t`` neighbours of every vertex; the
``ComponentSignature`` is a canonical form for that relation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial
from typing import Mapping

from ..errors import CapacityError
from ..graph import Edge, Graph, VertexSet, edge_key
from ..params import TreedepthDecomposition

CANON_CAP = 10
# Largest number of relabelings tried per component before giving up.
CANON_LABELINGS_CAP = 400_000


@dataclass(frozen=True)
class AnchoredComponent:
    anchor: int
    path: VertexSet
    vertices: VertexSet
    internal_edges: tuple[Edge, ...]
    attachments: Mapping[int, VertexSet]

    @property
    def size(self) -> int:
        return len(self.vertices)

    def attachment_indices(self, v: int) -> tuple[int, ...]:
        """Positions in ``path`` (0 = root) of the path vertices adjacent to ``v``."""
        where = {p: i for i, p in enumerate(self.path)}
        return tuple(sorted(where[p] for p in self.attachments[v]))


@dataclass(frozen=True, order=True)
class ComponentSignature:
    size: int
    attachments: tuple[tuple[int, ...], ...]
    edges: tuple[Edge, ...]


def decompose_at(g: Graph, td: TreedepthDecomposition, t: int) -> tuple[list[AnchoredComponent], int]:
    """Anchored components of ``t`` (sorted by smallest vertex) and the largest component size."""
    path = td.ancestors(t)
    on_path = set(path)
    seen: set[int] = set()
    comps = []
    for c in sorted(td.children(t)):
        if c in seen:
            continue
        members = [c]
        seen.add(c)
        stack = [c]
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if w not in on_path and w not in seen:
                    seen.add(w)
                    members.append(w)
                    stack.append(w)
        verts = tuple(sorted(members))
        inside = set(verts)
        edges = tuple(sorted(edge_key(u, w) for u in verts for w in g.adj[u] if w in inside and u < w))
        attach = {u: tuple(sorted(w for w in g.adj[u] if w in on_path)) for u in verts}
        comps.append(AnchoredComponent(t, path, verts, edges, attach))
    comps.sort(key=lambda c: c.vertices[0])
    return comps, max((c.size for c in comps), default=0)


def _refined_cells(c: AnchoredComponent) -> list[list[int]]:
    """Colour refinement seeded with (attachments, degree); cells in canonical colour order."""
    nbrs: dict[int, list[int]] = {v: [] for v in c.vertices}
    for u, w in c.internal_edges:
        nbrs[u].append(w)
        nbrs[w].append(u)
    colour = {v: (c.attachment_indices(v), len(nbrs[v])) for v in c.vertices}
    rank = _rank(colour)
    while True:
        richer = {v: (rank[v], tuple(sorted(rank[w] for w in nbrs[v]))) for v in c.vertices}
        new_rank = _rank(richer)
        if len(set(new_rank.values())) == len(set(rank.values())):
            break
        rank = new_rank
    cells: dict[int, list[int]] = {}
    for v in sorted(c.vertices):
        cells.setdefault(rank[v], []).append(v)
    return [cells[r] for r in sorted(cells)]


def _rank(values: Mapping[int, object]) -> dict[int, int]:
    distinct = sorted(set(values.values()))
    where = {val: i for i, val in enumerate(distinct)}
    return {v: where[val] for v, val in values.items()}


def canonical_order(c: AnchoredComponent, cap: int = CANON_CAP) -> tuple[tuple[int, ...], ComponentSignature]:
    """Vertices of ``c`` listed in canonical label order, with the resulting signature.

    The minimum encoding is taken over all labelings that respect the refined
    colour order, so the result does not depend on the input vertex ids.
    """
    if c.size > cap:
        raise CapacityError(
            f"component of size {c.size} exceeds the canonicalisation cap {cap}; "
            "review the threshold override so that pruning only fires on small components"
        )
    cells = _refined_cells(c)
    labelings = 1
    for cell in cells:
        labelings *= factorial(len(cell))
    if labelings > CANON_LABELINGS_CAP:
        raise CapacityError(f"component needs {labelings} relabelings, above {CANON_LABELINGS_CAP}")
    attach = tuple(c.attachment_indices(v) for cell in cells for v in cell)
    best_edges = None
    best_order = None
    for choice in itertools.product(*(itertools.permutations(cell) for cell in cells)):
        order = tuple(v for part in choice for v in part)
        label = {v: i for i, v in enumerate(order)}
        enc = tuple(sorted(edge_key(label[u], label[w]) for u, w in c.internal_edges))
        if best_edges is None or enc < best_edges:
            best_edges, best_order = enc, order
    return best_order, ComponentSignature(c.size, attach, best_edges)


def signature(c: AnchoredComponent, cap: int = CANON_CAP) -> ComponentSignature:
    return canonical_order(c, cap)[1]


def renaming(b: AnchoredComponent, c: AnchoredComponent, cap: int = CANON_CAP) -> dict[int, int] | None:
    """A renaming from ``b`` onto ``c`` preserving adjacency and path attachments, if any."""
    if b.path != c.path:
        return None
    ob, sb = canonical_order(b, cap)
    oc, sc = canonical_order(c, cap)
    if sb != sc:
        return None
    return dict(zip(ob, oc))


def equivalence_classes(comps: list[AnchoredComponent], cap: int = CANON_CAP) -> dict[ComponentSignature, list[AnchoredComponent]]:
    """Group components by signature; each group keeps the input order."""
    groups: dict[ComponentSignature, list[AnchoredComponent]] = {}
    for c in comps:
        groups.setdefault(signature(c, cap), []).append(c)
    return groups
