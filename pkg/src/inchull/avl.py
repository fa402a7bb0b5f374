"""Rank-indexed AVL tree storing an x-sorted point sequence.

A height-balanced binary tree where every node carries its subtree size, so
the k-th point, the rank of an x value, and range splices are all O(log n).
Splices are *balanced deletions*: split / split / join rather than
one-by-one removal, so deleting a contiguous run of k points costs
O(log n), independent of k.

The tree stores points (x, y) with strictly increasing x; order by rank and
order by x coincide.  That is the store's invariant, not this module's --
here only rank arithmetic and balance are enforced.
"""

from __future__ import annotations

from typing import Iterator, Optional

Point = tuple[float, float]


class _Node:
    __slots__ = ("point", "left", "right", "height", "size")

    def __init__(self, point: Point) -> None:
        self.point = point
        self.left: Optional[_Node] = None
        self.right: Optional[_Node] = None
        self.height = 1
        self.size = 1


def _h(n: Optional[_Node]) -> int:
    return n.height if n is not None else 0


def _sz(n: Optional[_Node]) -> int:
    return n.size if n is not None else 0


def _pull(n: _Node) -> _Node:
    l, r = n.left, n.right
    lh = l.height if l is not None else 0
    rh = r.height if r is not None else 0
    n.height = (lh if lh > rh else rh) + 1
    n.size = (l.size if l is not None else 0) + (r.size if r is not None else 0) + 1
    return n


def _rot_right(n: _Node) -> _Node:
    l = n.left
    n.left = l.right
    l.right = _pull(n)
    return _pull(l)


def _rot_left(n: _Node) -> _Node:
    r = n.right
    n.right = r.left
    r.left = _pull(n)
    return _pull(r)


def _balance(n: _Node) -> _Node:
    _pull(n)
    bf = _h(n.left) - _h(n.right)
    if bf > 1:
        if _h(n.left.left) < _h(n.left.right):
            n.left = _rot_left(n.left)
        return _rot_right(n)
    if bf < -1:
        if _h(n.right.right) < _h(n.right.left):
            n.right = _rot_right(n.right)
        return _rot_left(n)
    return n


def _join(l: Optional[_Node], mid: _Node, r: Optional[_Node]) -> _Node:
    """Concatenate l, mid, r into one balanced tree (all nodes reused)."""
    hl, hr = _h(l), _h(r)
    if hl > hr + 1:
        l.right = _join(l.right, mid, r)
        return _balance(l)
    if hr > hl + 1:
        r.left = _join(l, mid, r.left)
        return _balance(r)
    mid.left = l
    mid.right = r
    return _pull(mid)


def _join2(l: Optional[_Node], r: Optional[_Node]) -> Optional[_Node]:
    if l is None:
        return r
    if r is None:
        return l
    l2, mid = _split_last(l)
    return _join(l2, mid, r)


def _split_last(t: _Node) -> tuple[Optional[_Node], _Node]:
    if t.right is None:
        return t.left, t
    rest, last = _split_last(t.right)
    t.right = rest
    return _balance(t), last


def _split(t: Optional[_Node], k: int) -> tuple[Optional[_Node], Optional[_Node]]:
    """First k points to the left tree, the rest to the right."""
    if t is None:
        return None, None
    ls = _sz(t.left)
    if k <= ls:
        a, b = _split(t.left, k)
        t.left = None
        return a, _join(b, t, t.right)
    a, b = _split(t.right, k - ls - 1)
    t.right = None
    return _join(t.left, t, a), b


class AvlChain:
    """The public rank-sequence interface over the node machinery."""

    __slots__ = ("_root",)

    def __init__(self) -> None:
        self._root: Optional[_Node] = None

    def __len__(self) -> int:
        return _sz(self._root)

    @property
    def height(self) -> int:
        return _h(self._root)

    @property
    def node_count(self) -> int:
        return _sz(self._root)

    def select(self, r: int) -> Point:
        """The point at rank r (0-based)."""
        n = self._root
        if not 0 <= r < _sz(n):
            raise IndexError(r)
        while True:
            l = n.left
            ls = l.size if l is not None else 0
            if r < ls:
                n = l
            elif r == ls:
                return n.point
            else:
                r -= ls + 1
                n = n.right

    def __getitem__(self, r: int) -> Point:
        if r < 0:
            r += _sz(self._root)
        return self.select(r)

    def rank_le(self, x: float) -> int:
        """Number of stored points with point.x <= x."""
        n = self._root
        count = 0
        while n is not None:
            if n.point[0] <= x:
                l = n.left
                count += (l.size if l is not None else 0) + 1
                n = n.right
            else:
                n = n.left
        return count

    def insert_at(self, r: int, p: Point) -> None:
        a, b = _split(self._root, r)
        self._root = _join(a, _Node(p), b)

    def delete_range(self, lo: int, hi: int) -> None:
        """Remove ranks [lo, hi) in O(log n) regardless of hi - lo."""
        if lo >= hi:
            return
        a, rest = _split(self._root, lo)
        _, b = _split(rest, hi - lo)
        self._root = _join2(a, b)

    def replace_range(self, lo: int, hi: int, p: Point) -> None:
        """Splice: delete ranks [lo, hi) and put p at rank lo."""
        a, rest = _split(self._root, lo)
        _, b = _split(rest, hi - lo)
        self._root = _join(a, _Node(p), b)

    def __iter__(self) -> Iterator[Point]:
        # Explicit stack: recursion depth would be fine, but this keeps
        # iteration allocation-free per element.
        stack: list[_Node] = []
        n = self._root
        while stack or n is not None:
            while n is not None:
                stack.append(n)
                n = n.left
            n = stack.pop()
            yield n.point
            n = n.right

    def to_list(self) -> list[Point]:
        return list(self)

    def clear(self) -> None:
        self._root = None

    def validate(self) -> None:
        """Check AVL balance, cached heights/sizes, and x strictly
        increasing in rank order.  Test hook; O(n)."""

        def rec(n: Optional[_Node]) -> tuple[int, int]:
            if n is None:
                return 0, 0
            lh, ls = rec(n.left)
            rh, rs = rec(n.right)
            if abs(lh - rh) > 1:
                raise AssertionError("AVL balance violated")
            if n.height != max(lh, rh) + 1 or n.size != ls + rs + 1:
                raise AssertionError("stale cached height/size")
            return n.height, n.size

        rec(self._root)
        pts = self.to_list()
        for i in range(1, len(pts)):
            if pts[i][0] <= pts[i - 1][0]:
                raise AssertionError("x not strictly increasing")
