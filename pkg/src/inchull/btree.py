"""Counted B+ tree storing an x-sorted point sequence in fixed-size nodes.

Leaves hold runs of points; inner nodes hold children plus cached per-child
cumulative sizes and maximum-x keys, so rank selection, x-rank lookup, and
contiguous range splices are all logarithmic with an in-node binary search
rather than a child-by-child scan.  Range deletion is *balanced*: the tree
is split at both rank boundaries and the outer parts joined back, detaching
whole subtrees instead of removing points one by one.

The node budget is explicit: a node nominally occupies ``node_bytes`` bytes
and holds at most ``fanout = max(4, node_bytes // 16)`` children or points
(16 bytes per child pointer or per point).  Nodes other than the root stay
at least half full.  ``node_count`` is maintained incrementally so a caller
can charge ``node_count * node_bytes`` per operation without walking the
tree.
"""

from __future__ import annotations

from bisect import bisect_right
from itertools import accumulate
from typing import Iterator, Optional, Union

Point = tuple[float, float]

_INF = float("inf")


class _Leaf:
    __slots__ = ("items",)

    def __init__(self, items: list[Point]) -> None:
        self.items = items

    @property
    def size(self) -> int:
        return len(self.items)

    @property
    def maxx(self) -> float:
        return self.items[-1][0]

    @property
    def height(self) -> int:
        return 1


class _Inner:
    __slots__ = ("kids", "csum", "xkeys", "size", "maxx", "height")

    def __init__(self, kids: list[_AnyNode]) -> None:
        self.kids = kids
        _pull(self)


_AnyNode = Union[_Leaf, _Inner]


def _pull(n: _Inner) -> None:
    """Refresh n's cached aggregates after any change to its kid list or to
    a kid's contents.  Every structural mutation funnels through here."""
    kids = n.kids
    if type(kids[0]) is _Leaf:
        n.csum = list(accumulate(len(k.items) for k in kids))
        n.xkeys = [k.items[-1][0] for k in kids]
        n.height = 2
    else:
        n.csum = list(accumulate(k.size for k in kids))
        n.xkeys = [k.maxx for k in kids]
        n.height = kids[0].height + 1
    n.size = n.csum[-1]
    n.maxx = n.xkeys[-1]


def _arity(n: _AnyNode) -> int:
    return len(n.items) if isinstance(n, _Leaf) else len(n.kids)


class BtreeChain:
    """The public rank-sequence interface over the node machinery."""

    __slots__ = ("fanout", "min_fill", "node_bytes", "_root", "_nodes")

    def __init__(self, node_bytes: int = 1024) -> None:
        if node_bytes < 16:
            raise ValueError("node_bytes must be at least 16")
        self.node_bytes = node_bytes
        self.fanout = max(4, node_bytes // 16)
        self.min_fill = self.fanout // 2
        self._root: Optional[_AnyNode] = None
        self._nodes = 0

    # -- size / lookup ------------------------------------------------------

    def __len__(self) -> int:
        return self._root.size if self._root is not None else 0

    @property
    def height(self) -> int:
        return self._root.height if self._root is not None else 0

    @property
    def node_count(self) -> int:
        return self._nodes

    def select(self, r: int) -> Point:
        n = self._root
        if n is None or not 0 <= r < n.size:
            raise IndexError(r)
        while isinstance(n, _Inner):
            cs = n.csum
            j = bisect_right(cs, r)
            if j:
                r -= cs[j - 1]
            n = n.kids[j]
        return n.items[r]

    def __getitem__(self, r: int) -> Point:
        if r < 0:
            r += len(self)
        return self.select(r)

    def rank_le(self, x: float) -> int:
        """Number of stored points with point.x <= x."""
        n = self._root
        if n is None:
            return 0
        count = 0
        while isinstance(n, _Inner):
            j = bisect_right(n.xkeys, x)
            if j == len(n.xkeys):
                return count + n.size
            if j:
                count += n.csum[j - 1]
            n = n.kids[j]
        return count + bisect_right(n.items, (x, _INF))

    def __iter__(self) -> Iterator[Point]:
        stack = [self._root] if self._root is not None else []
        stack.reverse()
        while stack:
            n = stack.pop()
            if isinstance(n, _Leaf):
                yield from n.items
            else:
                stack.extend(reversed(n.kids))

    def to_list(self) -> list[Point]:
        return list(self)

    def clear(self) -> None:
        self._root = None
        self._nodes = 0

    # -- node bookkeeping ----------------------------------------------------

    def _mk_leaf(self, items: list[Point]) -> _Leaf:
        self._nodes += 1
        return _Leaf(items)

    def _mk_inner(self, kids: list[_AnyNode]) -> _Inner:
        self._nodes += 1
        return _Inner(kids)

    def _free(self, n: _AnyNode) -> None:
        self._nodes -= 1

    def _free_subtree(self, n: Optional[_AnyNode]) -> None:
        if n is None:
            return
        stack = [n]
        while stack:
            m = stack.pop()
            self._nodes -= 1
            if isinstance(m, _Inner):
                stack.extend(m.kids)

    # -- splicing -------------------------------------------------------------

    def insert_at(self, r: int, p: Point) -> None:
        self.replace_range(r, r, p)

    def delete_range(self, lo: int, hi: int) -> None:
        """Remove ranks [lo, hi) by split / split / join."""
        if lo >= hi:
            return
        a, rest = self._split(self._root, lo)
        mid, b = self._split(rest, hi - lo)
        self._free_subtree(mid)
        self._root = self._join(a, b)

    def replace_range(self, lo: int, hi: int, p: Point) -> None:
        """Splice: delete ranks [lo, hi) and put p at rank lo."""
        a, rest = self._split(self._root, lo)
        mid, b = self._split(rest, hi - lo)
        self._free_subtree(mid)
        single = self._mk_leaf([p])
        self._root = self._join(self._join(a, single), b)

    # -- split / join machinery ------------------------------------------------

    def _normalize(self, n: Optional[_AnyNode]) -> Optional[_AnyNode]:
        while isinstance(n, _Inner) and len(n.kids) == 1:
            kid = n.kids[0]
            self._free(n)
            n = kid
        return n

    def _wrap(self, kids: list[_AnyNode]) -> Optional[_AnyNode]:
        if not kids:
            return None
        if len(kids) == 1:
            return kids[0]
        return self._mk_inner(kids)

    def _split(
        self, n: Optional[_AnyNode], k: int
    ) -> tuple[Optional[_AnyNode], Optional[_AnyNode]]:
        """First k points versus the rest; both results are proper trees
        (roots may be under-filled, as roots are allowed to be)."""
        if n is None or k <= 0:
            return None, n
        if k >= n.size:
            return n, None
        if isinstance(n, _Leaf):
            right = self._mk_leaf(n.items[k:])
            n.items = n.items[:k]
            return n, right
        cs = n.csum
        j = bisect_right(cs, k)
        kk = k - (cs[j - 1] if j else 0)
        kids = n.kids
        self._free(n)
        if kk == 0:
            left = self._wrap(kids[:j])
            right = self._wrap(kids[j:])
            return self._normalize(left), self._normalize(right)
        a_kid, b_kid = self._split(kids[j], kk)
        left = self._join(self._normalize(self._wrap(kids[:j])), a_kid)
        right = self._join(b_kid, self._normalize(self._wrap(kids[j + 1 :])))
        return left, right

    def _join(
        self, a: Optional[_AnyNode], b: Optional[_AnyNode]
    ) -> Optional[_AnyNode]:
        """Concatenate two trees of arbitrary heights."""
        a = self._normalize(a)
        b = self._normalize(b)
        if a is None:
            return b
        if b is None:
            return a
        if a.height >= b.height:
            return self._join_right(a, b)
        return self._join_left(a, b)

    def _merge_pair(self, left: _AnyNode, right: _AnyNode) -> list[_AnyNode]:
        """Combine two same-height siblings into one or two valid nodes;
        reuses both node objects where possible."""
        if isinstance(left, _Leaf):
            pool = left.items + right.items
            if len(pool) <= self.fanout:
                left.items = pool
                self._free(right)
                return [left]
            half = len(pool) // 2
            left.items = pool[:half]
            right.items = pool[half:]
            return [left, right]
        pool = left.kids + right.kids
        if len(pool) <= self.fanout:
            left.kids = pool
            _pull(left)
            self._free(right)
            return [left]
        half = len(pool) // 2
        left.kids = pool[:half]
        right.kids = pool[half:]
        _pull(left)
        _pull(right)
        return [left, right]

    def _join_right(self, a: _AnyNode, b: _AnyNode) -> _AnyNode:
        """Attach tree b (not taller than a) at the right edge of a."""
        if a.height == b.height:
            merged = self._merge_pair(a, b)
            return merged[0] if len(merged) == 1 else self._mk_inner(merged)
        # Descend the right spine to the parent level of b's height.
        spine: list[_Inner] = []
        n = a
        while n.height > b.height + 1:
            spine.append(n)
            n = n.kids[-1]
        # n is an inner node whose kids have b's height.
        merged = self._merge_pair(n.kids[-1], b)
        n.kids[-1:] = merged
        overflow = self._fix_overflow(n)
        _pull(n)
        for parent in reversed(spine):
            if overflow is not None:
                parent.kids.append(overflow)
            overflow = self._fix_overflow(parent)
            _pull(parent)
        if overflow is not None:
            return self._mk_inner([a, overflow])
        return a

    def _join_left(self, a: _AnyNode, b: _AnyNode) -> _AnyNode:
        """Attach tree a (strictly shorter than b) at the left edge of b."""
        spine: list[_Inner] = []
        n = b
        while n.height > a.height + 1:
            spine.append(n)
            n = n.kids[0]
        merged = self._merge_pair(a, n.kids[0])
        n.kids[:1] = merged
        overflow = self._fix_overflow_left(n)
        _pull(n)
        for parent in reversed(spine):
            if overflow is not None:
                parent.kids.insert(0, overflow)
            overflow = self._fix_overflow_left(parent)
            _pull(parent)
        if overflow is not None:
            return self._mk_inner([overflow, b])
        return b

    def _fix_overflow(self, n: _Inner) -> Optional[_AnyNode]:
        """Split n's kid list if over fanout; the new right sibling is
        returned for the caller to place."""
        if len(n.kids) <= self.fanout:
            return None
        half = len(n.kids) // 2
        sib = self._mk_inner(n.kids[half:])
        n.kids = n.kids[:half]
        _pull(n)
        return sib

    def _fix_overflow_left(self, n: _Inner) -> Optional[_AnyNode]:
        """Mirror image: the new LEFT sibling is returned."""
        if len(n.kids) <= self.fanout:
            return None
        half = len(n.kids) // 2
        sib = self._mk_inner(n.kids[:half])
        n.kids = n.kids[half:]
        _pull(n)
        return sib

    # -- validation -----------------------------------------------------------

    def validate(self) -> None:
        """Structural invariants: equal leaf depth, occupancy bounds, cached
        size/maxx/height, x strictly increasing, node accounting."""
        root = self._root
        if root is None:
            if self._nodes != 0:
                raise AssertionError("node count drift on empty tree")
            return
        counted = 0

        def rec(n: _AnyNode, is_root: bool) -> tuple[int, int, float]:
            nonlocal counted
            counted += 1
            ar = _arity(n)
            if ar > self.fanout:
                raise AssertionError("node over fanout")
            if isinstance(n, _Leaf):
                if ar < 1 or (not is_root and ar < self.min_fill):
                    raise AssertionError("leaf under-filled")
                return 1, ar, n.items[-1][0]
            if ar < 2 or (not is_root and ar < self.min_fill):
                raise AssertionError("inner node under-filled")
            depths, sizes, maxxs = zip(*(rec(k, False) for k in n.kids))
            if len(set(depths)) != 1:
                raise AssertionError("leaves at unequal depths")
            if n.size != sum(sizes) or n.maxx != maxxs[-1]:
                raise AssertionError("stale cached size/maxx")
            if n.csum != list(accumulate(sizes)) or n.xkeys != list(maxxs):
                raise AssertionError("stale cached csum/xkeys")
            if n.height != depths[0] + 1:
                raise AssertionError("stale cached height")
            return depths[0] + 1, n.size, n.maxx

        rec(root, True)
        if counted != self._nodes:
            raise AssertionError(
                f"node count drift: walked {counted}, tracked {self._nodes}"
            )
        pts = self.to_list()
        for i in range(1, len(pts)):
            if pts[i][0] <= pts[i - 1][0]:
                raise AssertionError("x not strictly increasing")
