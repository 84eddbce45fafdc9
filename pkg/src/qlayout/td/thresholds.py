"""Size and child-count thresholds that gate component pruning.

In ``paper`` mode the values follow the exact recursion

    size(k, 1) = children(k, 1) = 0
    size(k, i) = size(k, i-1) * children(k, i-1) + 1
    children(k, i) = ((2^(k+1) + 1)^(size^2) + 1) * (size + k)! * 2^((k + size)^2)

with ``size = size(k, i)``. These grow as a tower of exponents: for k >= 2 the
value children(k, 3) already has far more digits than fit in memory, so any
value whose binary length would exceed ``BIT_LIMIT`` is returned as
``TOWER``, which compares greater than every integer.

``synthetic`` mode replaces the child counts by small user-chosen numbers so
the pruning machinery can run on desk-sized graphs. It is only sound where an
exhaustive check confirms it, which is what the test suite does.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

BIT_LIMIT = 1 << 20


@functools.total_ordering
class _Tower:
    """Placeholder for an integer too large to materialise."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("tower")

    def __repr__(self):
        return "TOWER"

    def __int__(self):
        raise OverflowError("tower-sized threshold has no materialised integer value")

    def __mul__(self, other):
        if other == 0:
            return 0
        return self

    __rmul__ = __mul__

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __floordiv__(self, other):
        return self


TOWER = _Tower()


def _children_from_size(k: int, size):
    if size is TOWER or size.bit_length() > 32:
        return TOWER
    bits = size * size * math.log2(2 ** (k + 1) + 1) + math.lgamma(size + k + 1) / math.log(2) + (k + size) ** 2
    if bits > BIT_LIMIT:
        return TOWER
    return (((2 ** (k + 1) + 1) ** (size * size) + 1) * math.factorial(size + k)) * 2 ** ((k + size) ** 2)


@functools.lru_cache(maxsize=None)
def paper_values(k: int, i: int):
    """``(size(k, i), children(k, i))`` from the exact recursion."""
    if i < 1:
        raise ValueError("threshold level starts at 1")
    if i == 1:
        return 0, 0
    prev_size, prev_children = paper_values(k, i - 1)
    size = prev_size * prev_children + 1
    if size is not TOWER and size.bit_length() > BIT_LIMIT:
        size = TOWER
    return size, _children_from_size(k, size)


@dataclass(frozen=True)
class Thresholds:
    """Threshold configuration.

    ``children`` lists synthetic child-count thresholds for levels 2, 3, ...;
    the last entry repeats for higher levels. ``sizes`` optionally overrides
    the synthetic size bounds the same way; by default they follow the size
    recursion driven by the synthetic child counts.
    """

    mode: str = "paper"
    children: tuple[int, ...] = ()
    sizes: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.mode not in ("paper", "synthetic"):
            raise ValueError(f"unknown threshold mode {self.mode!r}")
        if self.mode == "synthetic":
            if not self.children or any(c < 1 for c in self.children):
                raise ValueError("synthetic thresholds need positive child counts")
            if self.sizes is not None and (not self.sizes or any(s < 1 for s in self.sizes)):
                raise ValueError("synthetic sizes must be positive")

    @classmethod
    def paper(cls) -> "Thresholds":
        return cls("paper")

    @classmethod
    def synthetic(cls, children, sizes=None) -> "Thresholds":
        if isinstance(children, int):
            children = (children,)
        if isinstance(sizes, int):
            sizes = (sizes,)
        return cls("synthetic", tuple(children), None if sizes is None else tuple(sizes))

    @classmethod
    def parse(cls, text: str) -> "Thresholds":
        """``paper`` or ``synthetic:<c2>,<c3>,...``."""
        text = text.strip()
        if text == "paper":
            return cls.paper()
        if text.startswith("synthetic:"):
            body = text[len("synthetic:"):]
            try:
                values = tuple(int(x) for x in body.split(",") if x.strip())
            except ValueError as exc:
                raise ValueError(f"bad synthetic threshold list {body!r}") from exc
            return cls.synthetic(values)
        raise ValueError(f"thresholds must be 'paper' or 'synthetic:<list>', got {text!r}")

    def _pick(self, values, i):
        return values[min(i - 2, len(values) - 1)]

    def children_fn(self, k: int, i: int):
        if self.mode == "paper":
            return paper_values(k, i)[1]
        return 0 if i == 1 else self._pick(self.children, i)

    def size_fn(self, k: int, i: int):
        if self.mode == "paper":
            return paper_values(k, i)[0]
        if i == 1:
            return 0
        if self.sizes is not None:
            return self._pick(self.sizes, i)
        return self.size_fn(k, i - 1) * self.children_fn(k, i - 1) + 1

    def class_fn(self, k: int, i: int):
        """Least size of an equivalence class that may lose a component.

        Paper mode: the pigeonhole share children / 2^((k+size)^2). Synthetic
        mode: the synthetic child count itself.
        """
        if self.mode == "synthetic":
            return self.children_fn(k, i)
        size = self.size_fn(k, i)
        children = self.children_fn(k, i)
        if children is TOWER or size is TOWER:
            return TOWER
        return children // 2 ** ((k + size) ** 2)

    def describe(self) -> str:
        if self.mode == "paper":
            return "paper"
        return "synthetic:" + ",".join(map(str, self.children))


def thresholds_eval(k: int, i: int, mode: Thresholds | None = None):
    """``(size(k, i), children(k, i))`` under the given threshold mode (paper by default)."""
    if not 1 <= i <= k:
        raise ValueError(f"level must satisfy 1 <= i <= k, got i={i}, k={k}")
    mode = mode or Thresholds.paper()
    return mode.size_fn(k, i), mode.children_fn(k, i)
