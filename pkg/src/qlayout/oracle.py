"""Brute-force ground truth for queue numbers.

Enumerates vertex orders depth-first. The only shortcuts are ones that keep
the search exhaustive:

* a prefix is dropped once it forces a rainbow at least as large as the best
  complete order found so far: either among edges with both ends placed, or
  one such nesting chain enclosed by an edge whose right end is still
  unplaced (that end will land to the right of everything placed);
* when deciding one queue, if ``u`` is placed before ``v`` and both still
  wait for neighbours ``w1`` of ``u`` and ``w2`` of ``v`` (``w1 != w2``), then
  ``w1`` must come before ``w2``; a prefix whose such constraints form a
  cycle cannot be completed;
* vertices with identical neighbourhoods (twins), and caller-declared
  interchangeable vertex blocks, are placed in a fixed relative order. Every
  declared block swap is checked to be an automorphism before it is used.

Nothing here calls into the kernel or vertex-cover modules.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import CapacityError, GraphError
from .graph import Graph, edge_key
from .layout import LinearLayout, max_rainbow, min_queues_for_order, validate_layout

ORACLE_CAP = 10


@dataclass(frozen=True)
class OracleResult:
    queue_number: int
    witness: LinearLayout
    orders_examined: int


def _check_cap(g: Graph, cap: int | None):
    if cap is not None and g.n > cap:
        raise CapacityError(f"oracle limited to {cap} vertices (graph has {g.n}); raise the cap explicitly")


def _precedence(g: Graph, blocks: Sequence[Sequence[Sequence[int]]], twins: bool = True) -> tuple[list[list[int]], list[list[tuple[int, ...]]]]:
    """Per-vertex predecessors it must wait for, plus verified block groups."""
    must_follow: list[list[int]] = [[] for _ in g.vertices]
    in_blocks = {v for group in blocks for b in group for v in b}
    if sum(len(b) for group in blocks for b in group) != len(in_blocks):
        raise GraphError("interchangeable blocks overlap")
    seen: dict[tuple, int] = {}
    # twin symmetry only on vertices outside declared blocks, so the two kinds commute
    for v in g.vertices:
        if not twins or v in in_blocks:
            continue
        for key in (("o",) + g.adj[v], ("c",) + tuple(sorted(g.adj[v] + (v,)))):
            if key in seen:
                must_follow[v].append(seen[key])
            seen[key] = v
    groups = []
    for group in blocks:
        group = [tuple(b) for b in group]
        for b in group[1:]:
            _verify_swap(g, group[0], b)
        groups.append(group)
    return must_follow, groups


def _verify_swap(g: Graph, a: Sequence[int], b: Sequence[int]):
    if len(a) != len(b) or set(a) & set(b):
        raise GraphError("interchangeable blocks must be disjoint and equally long")
    swap = {v: v for v in g.vertices}
    for x, y in zip(a, b):
        swap[x], swap[y] = y, x
    for u, v in g.edges:
        if not g.has_edge(swap[u], swap[v]):
            raise GraphError(f"swapping blocks {tuple(a)} and {tuple(b)} is not an automorphism")


class _Search:
    def __init__(self, g: Graph, target: int | None, blocks, twins: bool = True):
        self.g = g
        self.n = g.n
        self.pos = [-1] * g.n
        self.order: list[int] = []
        self.must_follow, self.groups = _precedence(g, blocks, twins)
        self.block_of: dict[int, tuple[int, int]] = {}
        for gi, group in enumerate(self.groups):
            for bi, b in enumerate(group):
                for v in b:
                    self.block_of[v] = (gi, bi)
        self.target = target
        self.best = g.m + 1
        self.best_order: tuple[int, ...] | None = None
        self.leaves = 0
        self.chain: dict[tuple[int, int], int] = {}
        self.unplaced = [g.degree(v) for v in g.vertices]

    def allowed(self, x: int) -> bool:
        if any(self.pos[u] < 0 for u in self.must_follow[x]):
            return False
        if x in self.block_of:
            gi, bi = self.block_of[x]
            if bi > 0:
                # a block may open only after its predecessor block has opened
                prev = self.groups[gi][bi - 1]
                if all(self.pos[u] < 0 for u in prev):
                    return False
        return True

    def place(self, x: int) -> int:
        p = len(self.order)
        self.pos[x] = p
        self.order.append(x)
        for w in self.g.adj[x]:
            self.unplaced[w] -= 1
        top = 0
        for y in self.g.adj[x]:
            if self.pos[y] >= 0 and y != x:
                # chain length with (y, x) outermost among closed edges
                inner = 0
                for (a, b), c in self.chain.items():
                    if self.pos[y] < a and b < p and c > inner:
                        inner = c
                self.chain[(self.pos[y], p)] = inner + 1
                top = max(top, inner + 1)
        return max(top, self.open_bound())

    def open_bound(self) -> int:
        """Rainbow forced by edges whose right end is not placed yet."""
        p = len(self.order)
        right_of = [0] * (p + 1)  # longest closed chain starting at or after a position
        for (a, _), c in self.chain.items():
            if c > right_of[a]:
                right_of[a] = c
        for i in range(p - 1, -1, -1):
            right_of[i] = max(right_of[i], right_of[i + 1])
        best = 0
        for u in self.order:
            if self.unplaced[u] > 0:
                best = max(best, 1 + right_of[self.pos[u] + 1])
        return best

    def future_cycle(self) -> bool:
        """Whether open edges impose cyclic precedence on unplaced vertices."""
        waiting = [
            [w for w in self.g.adj[u] if self.pos[w] < 0] for u in self.order if self.unplaced[u] > 0
        ]
        succ: dict[int, set[int]] = {}
        for i, left in enumerate(waiting):
            for right in waiting[i + 1 :]:
                for w1 in left:
                    for w2 in right:
                        if w1 != w2:
                            succ.setdefault(w1, set()).add(w2)
        state: dict[int, int] = {}  # 1 on stack, 2 finished

        def visit(x) -> bool:
            state[x] = 1
            for y in succ.get(x, ()):
                s = state.get(y, 0)
                if s == 1 or (s == 0 and visit(y)):
                    return True
            state[x] = 2
            return False

        return any(state.get(x, 0) == 0 and visit(x) for x in list(succ))

    def unplace(self, x: int):
        p = self.pos[x]
        for key in [k for k in self.chain if k[1] == p]:
            del self.chain[key]
        for w in self.g.adj[x]:
            self.unplaced[w] += 1
        self.order.pop()
        self.pos[x] = -1

    def run(self, worst_so_far: int):
        if len(self.order) == self.n:
            self.leaves += 1
            if worst_so_far < self.best:
                self.best = worst_so_far
                self.best_order = tuple(self.order)
            return
        for x in range(self.n):
            if self.pos[x] >= 0 or not self.allowed(x):
                continue
            top = self.place(x)
            worst = max(worst_so_far, top)
            limit = self.best if self.target is None else self.target + 1
            if worst < limit and not (self.target == 1 and self.future_cycle()):
                self.run(worst)
            self.unplace(x)
            if self.target is not None and self.best <= self.target:
                return
            if self.best <= (1 if self.g.m else 0):
                return


def oracle_queue_number(g: Graph, cap: int | None = ORACLE_CAP, blocks=(), twins: bool = True) -> OracleResult:
    """Minimum over all vertex orders of the maximum rainbow size.

    ``twins=False`` switches off twin symmetry so every order is enumerated
    (up to rainbow pruning). ``blocks`` is a list of groups of equally long
    vertex tuples; swapping any two tuples of a group must be an automorphism.
    """
    _check_cap(g, cap)
    if g.n == 0:
        return OracleResult(0, LinearLayout((), {}, 0), 1)
    search = _Search(g, None, blocks, twins)
    search.run(0)
    order = search.best_order
    witness = min_queues_for_order(g, order)
    assert witness.num_queues == search.best == max_rainbow(g, order).size
    assert validate_layout(g, witness) is None
    return OracleResult(search.best, witness, search.leaves)


def oracle_is_1queue(g: Graph, cap: int | None = ORACLE_CAP, blocks=(), twins: bool = True) -> tuple[bool, LinearLayout | None]:
    """Whether some vertex order has no two nesting independent edges; with a witness."""
    _check_cap(g, cap)
    if g.n == 0:
        return True, LinearLayout((), {}, 0)
    search = _Search(g, 1, blocks, twins)
    search.run(0)
    if search.best > 1:
        return False, None
    witness = min_queues_for_order(g, search.best_order)
    assert validate_layout(g, witness) is None
    return True, witness


def brute_force_max_rainbow(g: Graph, order: Sequence[int]) -> int:
    """Largest pairwise-nesting edge subset, found by growing subsets edge by edge."""
    pos = {v: i for i, v in enumerate(order)}
    spans = sorted(tuple(sorted((pos[u], pos[v]))) for u, v in g.edges)
    best = 0

    def nests(e, f):
        return (e[0] < f[0] and f[1] < e[1]) or (f[0] < e[0] and e[1] < f[1])

    def grow(start: int, chosen: list):
        nonlocal best
        best = max(best, len(chosen))
        for i in range(start, len(spans)):
            e = spans[i]
            if all(nests(e, f) for f in chosen):
                chosen.append(e)
                grow(i + 1, chosen)
                chosen.pop()

    grow(0, [])
    return best


def relabel_graph(g: Graph, perm: Sequence[int]) -> Graph:
    """Copy of ``g`` with vertex ``v`` renamed ``perm[v]``."""
    return Graph(g.n, [edge_key(perm[u], perm[v]) for u, v in g.edges])
