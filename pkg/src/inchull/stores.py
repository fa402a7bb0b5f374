"""Hull stores: one insertion interface, three container strategies.

Every store maintains the canonical upper chain and the canonical
(y-mirrored) lower chain of everything inserted so far, so any two stores
fed the same points report bit-identical hulls.  They differ only in how a
chain is physically kept:

* :class:`VectorStore` -- plain Python lists.  O(log h) predicate calls to
  locate an insertion, but each admitted vertex pays a Theta(h) contiguous
  shift.
* :class:`AvlStore` -- rank-indexed AVL trees; the shift becomes an O(log h)
  balanced range splice, at the price of per-node pointer chasing.
* :class:`BtreeStore` -- counted B+ trees with a configurable node budget;
  the cache-friendlier middle ground.

``insert`` returns an :data:`InsertOutcome`: per chain, whether the point
was admitted and how many vertices it popped on each side.  Two stores in
the same state that report identical outcomes for an insert are in
identical states afterwards, which is what lets a cheap step-by-step shadow
comparison stand in for full hull comparison when auditing predicate
kernels.

Memory accounting is a *model*, applied uniformly so the structures can be
compared: a point is 16 bytes, a vector is a 56-byte header plus 16 bytes
per point with exact-fit growth, an AVL node is 48 bytes, a B-tree node is
its configured ``node_bytes``.  ``memory_bytes`` reports current usage;
``peak_bytes`` its running maximum over the insertion history.
"""

from __future__ import annotations

from bisect import bisect_right
from typing import Optional, Sequence

from .avl import AvlChain
from .btree import BtreeChain
from .hull_core import (
    _left_kept_edges,
    _right_popped_front,
    chain_insert,
    require_finite,
)
from .predicates import KernelKind, Line, Point, above_line
from . import queries

_INF = float("inf")

POINT_BYTES = 16
VECTOR_HEADER_BYTES = 56
AVL_NODE_BYTES = 48
STORE_OVERHEAD_BYTES = 2 * VECTOR_HEADER_BYTES

ChainOutcome = tuple[bool, int, int]
InsertOutcome = tuple[ChainOutcome, ChainOutcome]


class _StoreCommon:
    """Queries, hull reporting, and memory tracking shared by all stores.

    Subclasses provide ``_up`` and ``_lo`` (sequence views of the upper and
    mirrored lower chains), ``kernel``, and ``memory_bytes``.
    """

    kernel: KernelKind
    _up: Sequence[Point]
    _lo: Sequence[Point]
    _peak: int

    # -- hull reporting -------------------------------------------------------

    def __len__(self) -> int:
        return self.hull_size()

    def hull_size(self) -> int:
        nu = len(self._up)
        nl = len(self._lo)
        if nu == 0:
            return 0
        up0 = self._up[0]
        lo0 = self._lo[0]
        shared = int(up0[0] == lo0[0] and up0[1] == -lo0[1])
        upn = self._up[nu - 1]
        lon = self._lo[nl - 1]
        shared += int(upn[0] == lon[0] and upn[1] == -lon[1])
        return max(nu + nl - shared, 1)

    def vertices(self) -> list[Point]:
        """The hull cycle: lower chain left to right, then upper chain right
        to left, shared endpoints deduplicated (counterclockwise)."""
        nu = len(self._up)
        if nu == 0:
            return []
        cycle = [(p[0], -p[1]) for p in self._lo]
        back = list(self._up)
        back.reverse()
        if back[0] == cycle[-1]:
            back = back[1:]
        if back and back[-1] == cycle[0]:
            back = back[:-1]
        return cycle + back

    def upper_vertices(self) -> list[Point]:
        return list(self._up)

    def lower_vertices(self) -> list[Point]:
        return [(p[0], -p[1]) for p in self._lo]

    # -- chain views for composite structures ---------------------------------

    @property
    def chains(self) -> tuple[Sequence[Point], Sequence[Point]]:
        """(upper, mirrored-lower) sequence views; treat as read-only."""
        return self._up, self._lo

    # -- queries ---------------------------------------------------------------

    def contains(self, q: Point) -> bool:
        return queries.contains(self._up, self._lo, q, self.kernel)

    def extreme_point(self, d: tuple[float, float]) -> Point:
        return queries.extreme_point(self._up, self._lo, d, self.kernel)

    def line_hits_hull(self, l: Line) -> bool:
        return queries.line_hits_hull(self._up, self._lo, l, self.kernel)

    def tangents_from_point(self, q: Point) -> tuple[Point, Point]:
        return queries.tangents_from_point(self._up, self._lo, q, self.kernel)

    def line_intersect(self, l: Line) -> Optional[tuple[Point, Point]]:
        return queries.line_intersect(self._up, self._lo, l, self.kernel)

    # -- memory ----------------------------------------------------------------

    def memory_bytes(self) -> int:
        raise NotImplementedError

    def peak_bytes(self) -> int:
        return self._peak

    def _note_memory(self) -> None:
        m = self.memory_bytes()
        if m > self._peak:
            self._peak = m


class VectorStore(_StoreCommon):
    """Both chains as plain lists; the fastest store while hulls are small."""

    name = "vector"
    __slots__ = ("kernel", "_up", "_lo", "_peak")

    def __init__(self, kernel: KernelKind = KernelKind.EXACT) -> None:
        self.kernel = kernel
        self._up: list[Point] = []
        self._lo: list[Point] = []
        self._peak = 0
        self._note_memory()

    def insert(self, p: Point) -> InsertOutcome:
        kernel = self.kernel
        up = chain_insert(self._up, p, kernel)
        lo = chain_insert(self._lo, (p[0], -p[1]), kernel)
        self._note_memory()
        return up, lo

    def memory_bytes(self) -> int:
        return STORE_OVERHEAD_BYTES + POINT_BYTES * (len(self._up) + len(self._lo))


def _rank_insert(tree, q: Point, kernel: KernelKind) -> ChainOutcome:
    """chain_insert over a rank tree: same decisions, same outcome, with the
    contiguous splice done as one balanced replace_range."""
    require_finite(q)
    n = len(tree)
    if n == 0:
        tree.insert_at(0, q)
        return True, 0, 0
    x = q[0]
    pos = tree.rank_le(x)
    tie = False
    if pos == 0 or pos == n:
        left = tree.select(pos - 1) if pos else None
        if left is not None and left[0] == x:
            tie = True
            if q[1] <= left[1]:
                return False, 0, 0
        # else: strictly outside the x span, hence above.
    else:
        left = tree.select(pos - 1)
        if left[0] == x:
            tie = True
            if q[1] <= left[1]:
                return False, 0, 0
        elif not above_line((left, tree.select(pos)), q, kernel):
            return False, 0, 0
    n1 = pos - 1 if tie else pos
    i = _left_kept_edges(tree, n1, q, kernel) if n1 >= 2 else n1 - 1
    j = _right_popped_front(tree, pos, q, kernel) if n - pos >= 2 else 0
    tree.replace_range(i + 1, pos + j, q)
    return True, (n1 - 1 - i) + (1 if tie else 0), j


class AvlStore(_StoreCommon):
    """Both chains as rank-indexed AVL trees."""

    name = "avl"
    __slots__ = ("kernel", "_up", "_lo", "_peak")

    def __init__(self, kernel: KernelKind = KernelKind.EXACT) -> None:
        self.kernel = kernel
        self._up = AvlChain()
        self._lo = AvlChain()
        self._peak = 0
        self._note_memory()

    def insert(self, p: Point) -> InsertOutcome:
        up = _rank_insert(self._up, p, self.kernel)
        lo = _rank_insert(self._lo, (p[0], -p[1]), self.kernel)
        self._note_memory()
        return up, lo

    def memory_bytes(self) -> int:
        nodes = self._up.node_count + self._lo.node_count
        return STORE_OVERHEAD_BYTES + AVL_NODE_BYTES * nodes


class BtreeStore(_StoreCommon):
    """Both chains as counted B+ trees with a configurable node budget."""

    name = "btree"
    __slots__ = ("kernel", "_up", "_lo", "_peak", "node_bytes")

    def __init__(
        self, kernel: KernelKind = KernelKind.EXACT, node_bytes: int = 1024
    ) -> None:
        self.kernel = kernel
        self.node_bytes = node_bytes
        self._up = BtreeChain(node_bytes)
        self._lo = BtreeChain(node_bytes)
        self._peak = 0
        self._note_memory()

    def insert(self, p: Point) -> InsertOutcome:
        up = _rank_insert(self._up, p, self.kernel)
        lo = _rank_insert(self._lo, (p[0], -p[1]), self.kernel)
        self._note_memory()
        return up, lo

    def memory_bytes(self) -> int:
        nodes = self._up.node_count + self._lo.node_count
        return STORE_OVERHEAD_BYTES + self.node_bytes * nodes
