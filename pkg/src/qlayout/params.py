"""Exact treedepth decompositions and minimum vertex covers.

Both routines take a budget and return ``None`` when the optimum exceeds it.
They are simple exponential searches meant for the small graphs left after
kernelisation, not asymptotically optimal FPT algorithms.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import GraphError
from .graph import Graph, VertexSet, connected_components, induced_subgraph, vertex_set

MEMO_LIMIT = 1 << 22
LONG_PATH_LIMIT = 64


@dataclass(frozen=True)
class TreedepthDecomposition:
    """Rooted forest over the graph's vertices; ``parent[v] is None`` marks a root."""

    parent: tuple[int | None, ...]

    @property
    def depth(self) -> tuple[int, ...]:
        """Number of vertices on the root path of each vertex (roots have depth 1)."""
        return tuple(len(self.ancestors(v)) for v in range(len(self.parent)))

    @property
    def height(self) -> int:
        return max(self.depth, default=0)

    def ancestors(self, v: int) -> VertexSet:
        """Root-to-``v`` path, ``v`` included, listed root first."""
        path = []
        while v is not None:
            path.append(v)
            v = self.parent[v]
        return tuple(reversed(path))

    def children(self, v: int) -> list[int]:
        return [u for u, p in enumerate(self.parent) if p == v]

    def roots(self) -> list[int]:
        return [u for u, p in enumerate(self.parent) if p is None]

    def descendants(self, v: int) -> list[int]:
        kids: dict[int, list[int]] = {}
        for u, p in enumerate(self.parent):
            if p is not None:
                kids.setdefault(p, []).append(u)
        out, stack = [], list(kids.get(v, []))
        while stack:
            u = stack.pop()
            out.append(u)
            stack.extend(kids.get(u, []))
        return sorted(out)

    def is_ancestor(self, a: int, b: int) -> bool:
        """True if ``a`` lies on the root path of ``b`` (``a == b`` counts)."""
        while b is not None:
            if b == a:
                return True
            b = self.parent[b]
        return False

    def closure_violations(self, g: Graph) -> list[tuple[int, int]]:
        return [(u, v) for u, v in g.sorted_edges() if not (self.is_ancestor(u, v) or self.is_ancestor(v, u))]

    def restrict(self, keep: Sequence[int]) -> "TreedepthDecomposition":
        """Decomposition of the subgraph induced by ``keep`` (ids renumbered by position in ``keep``).

        Each survivor's parent becomes its nearest surviving ancestor, which
        keeps the ancestor relation and hence the closure property.
        """
        new_id = {v: i for i, v in enumerate(keep)}
        parent: list[int | None] = []
        for v in keep:
            p = self.parent[v]
            while p is not None and p not in new_id:
                p = self.parent[p]
            parent.append(None if p is None else new_id[p])
        return TreedepthDecomposition(tuple(parent))

    def to_dict(self, g: Graph) -> dict:
        lab = g.labels
        return {
            "parent": {str(lab[v]): (None if p is None else lab[p]) for v, p in enumerate(self.parent)},
            "height": self.height,
        }

    def to_json(self, g: Graph) -> str:
        return json.dumps(self.to_dict(g))


@dataclass(frozen=True)
class VertexCoverCertificate:
    cover: VertexSet

    @property
    def size(self) -> int:
        return len(self.cover)

    def covers(self, g: Graph) -> bool:
        c = set(self.cover)
        return all(u in c or v in c for u, v in g.edges)

    def to_json(self, g: Graph) -> str:
        return json.dumps({"cover": [g.labels[v] for v in self.cover]})


# -- treedepth ---------------------------------------------------------------


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class _TreedepthSearch:
    def __init__(self, g: Graph):
        self.g = g
        self.nbr = [sum(1 << w for w in g.adj[v]) for v in g.vertices]
        self.exact: dict[int, int] = {}
        self.lower: dict[int, int] = {}

    def _remember(self, table, mask, value):
        if len(self.exact) + len(self.lower) < MEMO_LIMIT:
            table[mask] = value

    def components(self, mask: int) -> list[int]:
        comps = []
        while mask:
            seed = mask & -mask
            comp = frontier = seed
            while frontier:
                grow = 0
                for v in _bits(frontier):
                    grow |= self.nbr[v]
                frontier = grow & mask & ~comp
                comp |= frontier
            comps.append(comp)
            mask &= ~comp
        return comps

    def lower_bound(self, mask: int) -> int:
        """Degeneracy + 1, a valid lower bound on treedepth."""
        verts = _bits(mask)
        if len(verts) <= 1:
            return len(verts)
        deg = {v: bin(self.nbr[v] & mask).count("1") for v in verts}
        alive = set(verts)
        degeneracy = 0
        while alive:
            v = min(alive, key=lambda u: (deg[u], u))
            degeneracy = max(degeneracy, deg[v])
            alive.remove(v)
            for w in _bits(self.nbr[v] & mask):
                if w in alive:
                    deg[w] -= 1
        return degeneracy + 1

    def solve(self, mask: int, limit: int) -> int:
        """td of the connected set ``mask`` if it is <= limit, otherwise some value > limit."""
        if mask & (mask - 1) == 0:
            return 1
        if mask in self.exact:
            return self.exact[mask]
        lb = max(self.lower.get(mask, 0), self.lower_bound(mask))
        if lb > limit:
            self._remember(self.lower, mask, lb)
            return lb
        verts = sorted(_bits(mask), key=lambda v: (-bin(self.nbr[v] & mask).count("1"), v))
        best = None
        cap = min(limit, bin(mask).count("1"))
        for v in verts:
            worst = 0
            for comp in sorted(self.components(mask & ~(1 << v)), key=lambda c: -bin(c).count("1")):
                worst = max(worst, self.solve(comp, cap - 1))
                if worst > cap - 1:
                    break
            if worst <= cap - 1:
                best = worst + 1
                cap = best - 1
                if best <= lb:
                    break
        if best is None:
            self._remember(self.lower, mask, limit + 1)
            return limit + 1
        self._remember(self.exact, mask, best)
        return best

    def build(self, mask: int, height: int, parent: list, above: int | None):
        """Fill ``parent`` with a decomposition of ``mask`` of the given height."""
        if mask & (mask - 1) == 0:
            parent[mask.bit_length() - 1] = above
            return
        verts = sorted(_bits(mask), key=lambda v: (-bin(self.nbr[v] & mask).count("1"), v))
        for v in verts:
            comps = self.components(mask & ~(1 << v))
            if all(self.solve(c, height - 1) <= height - 1 for c in comps):
                parent[v] = above
                for c in comps:
                    self.build(c, self.solve(c, height - 1), parent, v)
                return
        raise AssertionError("treedepth reconstruction lost its witness")


def treedepth(g: Graph, budget: int) -> TreedepthDecomposition | None:
    """Minimum-height treedepth decomposition of a connected graph, or ``None`` if td > budget."""
    if g.n == 0:
        return TreedepthDecomposition(())
    if not g.is_connected():
        raise GraphError("treedepth() needs a connected graph; split it into components first")
    if budget < 1:
        return None
    if (1 << budget) < g.n and budget <= 6 and has_long_path(g, budget):
        return None
    search = _TreedepthSearch(g)
    full = (1 << g.n) - 1
    height = search.solve(full, budget)
    if height > budget:
        return None
    parent: list[int | None] = [None] * g.n
    search.build(full, height, parent, None)
    return TreedepthDecomposition(tuple(parent))


def treedepth_number(g: Graph) -> int:
    """td(g) for any graph (maximum over its components)."""
    best = 0
    for comp in connected_components(g):
        sub, _ = induced_subgraph(g, comp)
        best = max(best, treedepth(sub, sub.n).height)
    return best


def has_long_path(g: Graph, k: int) -> bool:
    """True iff ``g`` has a simple path with ``2**k`` edges."""
    target = 1 << k
    if target > LONG_PATH_LIMIT:
        raise ValueError(f"path length 2**{k} exceeds the supported limit {LONG_PATH_LIMIT}")
    if target + 1 > g.n:
        return False
    on_path = [False] * g.n

    def extend(v: int, length: int) -> bool:
        if length == target:
            return True
        on_path[v] = True
        for w in g.adj[v]:
            if not on_path[w] and extend(w, length + 1):
                on_path[v] = False
                return True
        on_path[v] = False
        return False

    for comp in connected_components(g):
        if len(comp) <= target:
            continue
        for s in comp:
            if extend(s, 0):
                return True
    return False


# -- vertex cover ------------------------------------------------------------


def _cover_search(adj: dict[int, set[int]], budget: int) -> list[int] | None:
    """A cover of size <= budget for the graph ``adj`` (mutated copy per branch)."""
    adj = {v: set(ns) for v, ns in adj.items() if ns}
    taken: list[int] = []

    def take(v):
        for w in adj.pop(v):
            adj[w].discard(v)
            if not adj[w]:
                del adj[w]
        taken.append(v)

    changed = True
    while changed and adj:
        changed = False
        if budget - len(taken) < 0:
            return None
        for v in sorted(adj):
            if v not in adj:
                continue
            nv = adj[v]
            if len(nv) > budget - len(taken):
                # more neighbours than budget: v must be in the cover
                take(v)
                changed = True
            elif len(nv) == 1:
                (w,) = nv
                take(w)
                changed = True
            else:
                # dominance: N[v] within N[u] for a neighbour u means u is never worse
                closed = nv | {v}
                for u in sorted(nv):
                    if closed <= adj[u] | {u}:
                        take(u)
                        changed = True
                        break
    remaining = budget - len(taken)
    if remaining < 0:
        return None
    if not adj:
        return taken
    if remaining == 0 or sum(len(ns) for ns in adj.values()) // 2 > remaining * max(len(ns) for ns in adj.values()):
        return None
    u = min(adj, key=lambda v: (-len(adj[v]), v))
    v = min(adj[u])
    for pick in (u, v):
        sub = {x: set(ns) for x, ns in adj.items()}
        for w in sub.pop(pick):
            sub[w].discard(pick)
        found = _cover_search(sub, remaining - 1)
        if found is not None:
            return taken + [pick] + found
    return None


def min_vertex_cover(g: Graph, budget: int | None = None) -> VertexCoverCertificate | None:
    """Minimum vertex cover if its size is at most ``budget`` (default: no limit)."""
    if budget is None:
        budget = g.n
    adj = {v: set(g.adj[v]) for v in g.vertices}
    for k in range(0, budget + 1):
        found = _cover_search(adj, k)
        if found is not None:
            cert = VertexCoverCertificate(vertex_set(found))
            assert cert.covers(g)
            return cert
    return None


def cover_path_decomposition(g: Graph, cover: Iterable[int]) -> TreedepthDecomposition:
    """Decomposition of height |cover| + 1: the cover as a path, other vertices hung below."""
    cover = list(cover)
    parent: list[int | None] = [None] * g.n
    for a, b in zip(cover, cover[1:]):
        parent[b] = a
    last = cover[-1] if cover else None
    inside = set(cover)
    for v in g.vertices:
        if v not in inside:
            parent[v] = last
    return TreedepthDecomposition(tuple(parent))
