"""Simple undirected graphs with dense integer ids.

Every graph keeps its vertices as ``0..n-1``. The labels the user supplied are
kept in ``Graph.labels`` and only used again when something is written out.
Graphs are immutable; operations that change the vertex set return a new graph
plus the id map back into the parent.
"""

from __future__ import annotations

import json
from collections import deque
from typing import Hashable, Iterable, Sequence

from .errors import GraphError, ParseError

Edge = tuple[int, int]
VertexSet = tuple[int, ...]


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def vertex_set(vertices: Iterable[int]) -> VertexSet:
    """Sorted, duplicate-free tuple of vertex ids."""
    return tuple(sorted(set(vertices)))


class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    ``edges`` holds each edge once as ``(u, v)`` with ``u < v``; ``adj[v]`` is
    the sorted tuple of neighbours of ``v``.
    """

    __slots__ = ("n", "edges", "adj", "labels", "_nbr_sets")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (), labels: Sequence[Hashable] | None = None):
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        keyed = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) references a vertex outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            keyed.add(edge_key(u, v))
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for u, v in keyed:
            nbrs[u].append(v)
            nbrs[v].append(u)
        self.n = n
        self.edges: frozenset[Edge] = frozenset(keyed)
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in nbrs)
        self._nbr_sets = tuple(frozenset(a) for a in self.adj)
        if labels is None:
            labels = range(n)
        self.labels: tuple[Hashable, ...] = tuple(labels)
        if len(self.labels) != n:
            raise GraphError("label table length differs from vertex count")
        if len(set(self.labels)) != n:
            raise GraphError("vertex labels must be unique")

    @classmethod
    def from_labeled_edges(cls, edges: Iterable[tuple[Hashable, Hashable]], vertices: Iterable[Hashable] = ()) -> "Graph":
        """Build a graph from label pairs; ids follow first appearance (``vertices`` first)."""
        index: dict[Hashable, int] = {}
        for v in vertices:
            index.setdefault(v, len(index))
        pairs = []
        for a, b in edges:
            if a == b:
                raise GraphError(f"self-loop at vertex {a!r}")
            ia = index.setdefault(a, len(index))
            ib = index.setdefault(b, len(index))
            pairs.append((ia, ib))
        return cls(len(index), pairs, labels=list(index))

    # -- queries ---------------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._nbr_sets[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._nbr_sets[u]

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def index_of(self, label: Hashable) -> int:
        """Dense id of a label; ``str`` forms of labels are accepted as a fallback."""
        try:
            return self.labels.index(label)
        except ValueError:
            pass
        text = str(label)
        for i, lab in enumerate(self.labels):
            if str(lab) == text:
                return i
        raise GraphError(f"unknown vertex label {label!r}")

    def is_connected(self) -> bool:
        return len(connected_components(self)) <= 1

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges and self.labels == other.labels

    def __hash__(self):
        return hash((self.n, self.edges, self.labels))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


# -- elementary operations ---------------------------------------------------


def connected_components(g: Graph, within: Iterable[int] | None = None) -> list[VertexSet]:
    """Components of ``g`` (or of ``g[within]``), sorted by smallest member."""
    alive = set(g.vertices) if within is None else set(within)
    seen: set[int] = set()
    comps = []
    for s in sorted(alive):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if w in alive and w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comps.append(tuple(sorted(comp)))
    return comps


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, VertexSet]:
    """Subgraph induced by ``s``; returns it with the map new id -> id in ``g``."""
    keep = vertex_set(s)
    for v in keep:
        if not 0 <= v < g.n:
            raise GraphError(f"unknown vertex id {v}")
    new_id = {v: i for i, v in enumerate(keep)}
    edges = [(new_id[u], new_id[v]) for u, v in g.edges if u in new_id and v in new_id]
    return Graph(len(keep), edges, labels=[g.labels[v] for v in keep]), keep


def remove_vertices(g: Graph, s: Iterable[int]) -> tuple[Graph, VertexSet]:
    drop = set(s)
    for v in drop:
        if not 0 <= v < g.n:
            raise GraphError(f"unknown vertex id {v}")
    return induced_subgraph(g, (v for v in g.vertices if v not in drop))


# -- I/O ---------------------------------------------------------------------


def parse_graph(text: str) -> Graph:
    """Parse an edge list or a JSON ``{"vertices": [...], "edges": [...]}`` document.

    Duplicate edges collapse; self-loops are rejected. Edge-list labels stay
    strings, JSON labels keep their JSON type.
    """
    if text.lstrip().startswith("{"):
        return _parse_json(text)
    return _parse_edge_list(text)


def _parse_edge_list(text: str) -> Graph:
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected two vertex labels, got {len(parts)} field(s): {raw!r}", line=lineno)
        a, b = parts
        if a == b:
            raise ParseError(f"self-loop at vertex {a!r}", line=lineno)
        pairs.append((a, b))
    return Graph.from_labeled_edges(pairs)


def _parse_json(text: str) -> Graph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno) from exc
    if not isinstance(doc, dict) or "edges" not in doc:
        raise ParseError("JSON graph must be an object with an 'edges' array")
    vertices = doc.get("vertices", [])
    edges = doc["edges"]
    if not isinstance(vertices, list) or not isinstance(edges, list):
        raise ParseError("'vertices' and 'edges' must be arrays")
    for v in vertices:
        if not isinstance(v, (str, int)) or isinstance(v, bool):
            raise ParseError(f"vertex label must be a string or integer, got {v!r}")
    if len(set(vertices)) != len(vertices):
        raise ParseError("duplicate entries in 'vertices'")
    pairs = []
    for i, e in enumerate(edges):
        if not isinstance(e, list) or len(e) != 2:
            raise ParseError(f"edge #{i} is not a two-element array: {e!r}")
        a, b = e
        if a == b:
            raise ParseError(f"self-loop at vertex {a!r}")
        pairs.append((a, b))
    return Graph.from_labeled_edges(pairs, vertices)


def graph_to_json(g: Graph) -> str:
    doc = {
        "vertices": list(g.labels),
        "edges": [[g.labels[u], g.labels[v]] for u, v in g.sorted_edges()],
    }
    return json.dumps(doc)


def graph_to_edge_list(g: Graph) -> str:
    """Edge-list text. Isolated vertices are not representable in this format."""
    return "".join(f"{g.labels[u]} {g.labels[v]}\n" for u, v in g.sorted_edges())


# -- small constructors used by the CLI, docs and tests ----------------------


def complete_graph(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(u, a + v) for u in range(a) for v in range(b)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with centre 0."""
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])
