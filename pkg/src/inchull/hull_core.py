"""Quarter-hull representation and the core upper-hull algorithms.

The central object is a *canonical concave chain*: a list of points with
strictly increasing x whose consecutive edge slopes strictly decrease.  Such
a chain is the upper hull of the points on it, contains no duplicate and no
collinear triple, and -- because insertion uses a loose pop rule together
with a strict above-the-line admission test -- is a unique normal form: any
insertion order of the same point set produces the same chain.  That
canonicality is what lets the test suite demand bit-identical hulls from
every data structure in this package.

Public surface:

* :func:`graham` -- linear-time construction over x-sorted points,
* :func:`scan` -- linear pop-and-append of one new rightmost point,
* :func:`quick_scan` -- the binary-search form of scan's pop count,
* :func:`quick_insert` -- insertion at arbitrary x via two binary searches,
* :func:`compose_upper` -- glue a left (rising) and right (falling) quarter
  into a validated upper hull.

The ``chain_*`` functions are the low-level engine shared by the hull
stores; they operate on plain lists of point tuples for speed and mutate in
place where documented.

Conventions: the *left quarter* of an upper hull runs from the leftmost
vertex to the apex (slopes positive, y rising); the *right quarter* runs
from the apex to the rightmost vertex (slopes negative, y falling).  When
several points share the maximum y, the apex is the leftmost of them and
the right quarter starts with one flat edge.  Lower hulls are handled by
the same code over y-negated points (:func:`mirror_y`); right quarters by
x-negation-and-reversal (:func:`mirror_x`).
"""

from __future__ import annotations

import enum
from bisect import bisect_right
from dataclasses import dataclass
from math import isfinite
from typing import Iterable, Sequence

from .predicates import KernelKind, Point, above_line, slope_cmp, slope_less

_INF = float("inf")


class HullContractError(ValueError):
    """An operation's precondition or a hull invariant was violated."""


class Orientation(enum.Enum):
    GAMMA = "gamma"  # leftmost -> apex, rising
    NABLA = "nabla"  # apex -> rightmost, falling


@dataclass(frozen=True)
class QuarterHull:
    """One quarter of a convex hull as an immutable vertex sequence.

    Structural invariants (checked at construction): at least one vertex,
    strictly increasing x, and monotone y -- strictly rising for GAMMA,
    falling for NABLA except that a NABLA chain may open with one flat edge
    (the apex-tie case, where two vertices share the maximum y).  Slope
    concavity is kernel-dependent and checked by :meth:`validate`.
    """

    vertices: tuple[Point, ...]
    orientation: Orientation = Orientation.GAMMA

    def __post_init__(self) -> None:
        vs = self.vertices
        if not vs:
            raise HullContractError("a quarter hull has at least one vertex")
        for i in range(1, len(vs)):
            if vs[i][0] <= vs[i - 1][0]:
                raise HullContractError(
                    f"x not strictly increasing at vertex {i}: {vs[i - 1]} -> {vs[i]}"
                )
            if self.orientation is Orientation.GAMMA:
                if vs[i][1] <= vs[i - 1][1]:
                    raise HullContractError(
                        f"rising quarter has non-rising y at vertex {i}"
                    )
            else:
                if vs[i][1] >= vs[i - 1][1] and not (i == 1 and vs[i][1] == vs[0][1]):
                    raise HullContractError(
                        f"falling quarter has non-falling y at vertex {i}"
                    )

    def __len__(self) -> int:
        return len(self.vertices)

    def validate(self, kernel: KernelKind = KernelKind.EXACT) -> None:
        """Check strict slope decrease (hence no collinear triple)."""
        vs = self.vertices
        for i in range(2, len(vs)):
            if not slope_less(vs[i - 1], vs[i], vs[i - 2], vs[i - 1], kernel):
                raise HullContractError(f"slopes not strictly decreasing at {i}")


@dataclass(frozen=True)
class UpperHull:
    """A full upper hull: rising quarter, falling quarter, shared apex."""

    gamma: QuarterHull
    nabla: QuarterHull
    apex: Point

    @property
    def chain(self) -> tuple[Point, ...]:
        """The x-monotone concave chain, apex deduplicated."""
        return self.gamma.vertices + self.nabla.vertices[1:]


@dataclass(frozen=True)
class FullHull:
    """Upper hull of P plus the upper hull of P with y negated."""

    upper: UpperHull
    lower: UpperHull  # over y-negated points

    def __post_init__(self) -> None:
        up = self.upper.chain
        lo = self.lower.chain
        # The chains share their extreme x values; with x-tied extreme
        # points the upper chain keeps the higher twin and the lower chain
        # the lower one, so the vertices themselves may differ.
        if lo[0][0] != up[0][0] or lo[-1][0] != up[-1][0]:
            raise HullContractError(
                "upper and lower hulls must span the same x range"
            )


def mirror_x(points: Iterable[Point]) -> list[Point]:
    """Negate x and reverse: maps a falling quarter onto a rising one."""
    out = [(-p[0], p[1]) for p in points]
    out.reverse()
    return out


def mirror_y(points: Iterable[Point]) -> list[Point]:
    """Negate y: maps a lower hull onto an upper hull and back."""
    return [(p[0], -p[1]) for p in points]


def require_finite(p: Point) -> None:
    if not (isfinite(p[0]) and isfinite(p[1])):
        raise HullContractError(f"non-finite point {p!r}")


# ---------------------------------------------------------------------------
# Low-level chain engine (plain lists, hot paths)
# ---------------------------------------------------------------------------


def upper_chain(points_sorted: Sequence[Point], kernel: KernelKind) -> list[Point]:
    """Canonical upper chain of points sorted by (x, y), in O(n) predicate
    calls.  Duplicates and x-ties are admitted in the input: a duplicate is
    skipped, and of several points sharing an x only the highest can stay.
    """
    chain: list[Point] = []
    pop = chain.pop
    push = chain.append
    for p in points_sorted:
        if chain:
            last = chain[-1]
            if last[0] == p[0]:
                if last[1] == p[1]:
                    continue
                pop()  # sorted by (x, y): p is the higher twin
        while len(chain) >= 2 and (
            slope_cmp(chain[-1], p, chain[-2], chain[-1], kernel) >= 0
        ):
            pop()
        push(p)
    return chain


def chain_strictly_above(
    chain: Sequence[Point], q: Point, kernel: KernelKind
) -> bool:
    """True iff q lies strictly above the concave chain -- that is, outside
    the closed region under it.  Points strictly outside the chain's x-span
    count as above (they are new hull vertices); an empty chain is "above".
    """
    n = len(chain)
    if n == 0:
        return True
    x = q[0]
    if x < chain[0][0] or x > chain[-1][0]:
        return True
    k = bisect_right(chain, (x, _INF)) - 1
    v = chain[k]
    if v[0] == x:
        return q[1] > v[1]
    return above_line((v, chain[k + 1]), q, kernel)


def _left_kept_edges(
    chain: Sequence[Point], n1: int, q: Point, kernel: KernelKind
) -> int:
    """Binary search over the edges of chain[0:n1] (all strictly left of q):
    the count i of surviving edges when q is appended.  Edge k survives iff
    slope(chain[k+1], q) < slope(chain[k], chain[k+1]); survivors form a
    prefix.  Returns i in [0, n1-1]; the kept vertices are chain[0:i+1].
    """
    lo, hi = 0, n1 - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if slope_cmp(chain[mid + 1], q, chain[mid], chain[mid + 1], kernel) < 0:
            lo = mid + 1
        else:
            hi = mid
    return lo


def _right_popped_front(
    chain: Sequence[Point], start: int, q: Point, kernel: KernelKind
) -> int:
    """Mirror image of :func:`_left_kept_edges` for the suffix chain[start:]
    (all strictly right of q): the count j of leading vertices that q pops.
    Edge k (indices relative to start) survives iff slope of that edge is
    less than slope(q, its left endpoint); survivors form a suffix.
    Returns j in [0, len(chain)-start-1].
    """
    n2 = len(chain) - start
    lo, hi = 0, n2 - 1
    while lo < hi:
        mid = (lo + hi) // 2
        a = chain[start + mid]
        if slope_cmp(a, chain[start + mid + 1], q, a, kernel) < 0:
            hi = mid
        else:
            lo = mid + 1
    return lo


def chain_insert(
    chain: list[Point], q: Point, kernel: KernelKind
) -> tuple[bool, int, int]:
    """Insert q into a canonical upper chain, in place.

    Returns ``(inserted, left_pops, right_pops)``: whether q became a
    vertex, and how many existing vertices were removed on each side of it.
    A point on or under the chain is a no-op.  Cost: two O(log h) binary
    searches plus one contiguous splice (the splice is the Theta(h) vector
    shift the tree stores exist to avoid).
    """
    require_finite(q)
    if not chain:
        chain.append(q)
        return True, 0, 0
    if not chain_strictly_above(chain, q, kernel):
        return False, 0, 0
    x = q[0]
    pos = bisect_right(chain, (x, _INF))
    tie = pos >= 1 and chain[pos - 1][0] == x
    n1 = pos - 1 if tie else pos
    i = _left_kept_edges(chain, n1, q, kernel) if n1 >= 2 else n1 - 1
    j = _right_popped_front(chain, pos, q, kernel) if len(chain) - pos >= 2 else 0
    chain[i + 1 : pos + j] = (q,)
    left_pops = (n1 - 1 - i) + (1 if tie else 0)
    return True, left_pops, j


def chain_apex_index(chain: Sequence[Point]) -> int:
    """Index of the apex (leftmost maximum-y vertex) of a concave chain,
    by binary search on the rising-then-falling y sequence."""
    lo, hi = 0, len(chain) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if chain[mid + 1][1] > chain[mid][1]:
            lo = mid + 1
        else:
            hi = mid
    return lo


# ---------------------------------------------------------------------------
# Whole-quarter operations over QuarterHull values
# ---------------------------------------------------------------------------


def graham(
    points: Sequence[Point], kernel: KernelKind = KernelKind.EXACT
) -> QuarterHull:
    """Left quarter hull of x-sorted points in linear time.

    The input must be sorted by (x, y); this is checked in debug builds.
    Only points up to and including the apex contribute to the result.
    """
    if not points:
        raise HullContractError("graham requires at least one point")
    if __debug__:
        for k in range(1, len(points)):
            if points[k] < points[k - 1]:
                raise HullContractError(f"input not sorted by (x, y) at {k}")
    chain = upper_chain(points, kernel)
    apex = chain_apex_index(chain)
    return QuarterHull(tuple(chain[: apex + 1]), Orientation.GAMMA)


def scan(
    h: QuarterHull, q: Point, kernel: KernelKind = KernelKind.EXACT
) -> QuarterHull:
    """Append q as the new rightmost vertex of a rising quarter, popping
    while the last edge's slope is <= the slope from its endpoint to q.
    Linear worst case, amortized constant over an insertion sequence."""
    _require_gamma(h, "scan")
    require_finite(q)
    vs = list(h.vertices)
    if q[0] <= vs[-1][0]:
        raise HullContractError("scan requires q strictly right of the hull")
    while len(vs) >= 2 and not slope_less(vs[-1], q, vs[-2], vs[-1], kernel):
        vs.pop()
    vs.append(q)
    out = QuarterHull(tuple(vs), Orientation.GAMMA)
    if __debug__:
        out.validate(kernel)
    return out


def quick_scan(
    h: QuarterHull, q: Point, kernel: KernelKind = KernelKind.EXACT
) -> int:
    """Binary-search version of :func:`scan`'s pop count: the unique index
    i such that exactly the edges at positions >= i are popped when q is
    appended.  ``scan(h, q)`` equals h truncated to its first i edges plus
    q.  O(log h) predicate calls."""
    _require_gamma(h, "quick_scan")
    require_finite(q)
    vs = h.vertices
    if q[0] <= vs[-1][0]:
        raise HullContractError("quick_scan requires q strictly right of the hull")
    if len(vs) < 2:
        return 0
    return _left_kept_edges(vs, len(vs), q, kernel)


def quick_insert(
    h: QuarterHull, q: Point, kernel: KernelKind = KernelKind.EXACT
) -> QuarterHull:
    """Insert q at arbitrary x into a rising quarter via a split at q's x
    and one binary search per side.  q must be strictly above the hull (or
    strictly outside its x-span); callers test containment first."""
    _require_gamma(h, "quick_insert")
    vs = list(h.vertices)
    if not chain_strictly_above(vs, q, kernel):
        raise HullContractError(f"{q!r} is on or under the hull")
    chain_insert(vs, q, kernel)
    out = QuarterHull(tuple(vs), Orientation.GAMMA)
    if __debug__:
        out.validate(kernel)
    return out


def compose_upper(gamma: QuarterHull, nabla: QuarterHull) -> UpperHull:
    """Glue the rising and falling quarters of one upper hull together."""
    if gamma.orientation is not Orientation.GAMMA:
        raise HullContractError("compose_upper: first argument must be rising")
    if nabla.orientation is not Orientation.NABLA:
        raise HullContractError("compose_upper: second argument must be falling")
    if gamma.vertices[-1] != nabla.vertices[0]:
        raise HullContractError(
            f"apex mismatch: {gamma.vertices[-1]!r} != {nabla.vertices[0]!r}"
        )
    return UpperHull(gamma=gamma, nabla=nabla, apex=nabla.vertices[0])


def split_chain(chain: Sequence[Point]) -> tuple[QuarterHull, QuarterHull]:
    """View a concave chain as its two quarters, split at the apex."""
    a = chain_apex_index(chain)
    gamma = QuarterHull(tuple(chain[: a + 1]), Orientation.GAMMA)
    nabla = QuarterHull(tuple(chain[a:]), Orientation.NABLA)
    return gamma, nabla


def _require_gamma(h: QuarterHull, op: str) -> None:
    if h.orientation is not Orientation.GAMMA:
        raise HullContractError(
            f"{op} operates on rising quarters; mirror a falling one first"
        )
