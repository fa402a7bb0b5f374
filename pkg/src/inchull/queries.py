"""Point and line queries against one hull, in O(log h) predicate calls.

All functions take the hull as its two chains -- the upper chain and the
*mirrored* lower chain (y negated, so both are concave) -- which may be
plain lists or the rank-view wrappers the tree stores expose.  Decisions
are made through the pluggable predicate kernel; any constructed coordinate
(a line/edge crossing) is computed in exact rational arithmetic and then
rounded once to float, so under the exact kernel the reported points are
the correctly rounded true intersections.

Direction and side conventions: a query line is normalized so its second
endpoint is lexicographically larger; "above" is the left side of that
directed line (for a vertical line, the smaller-x side).  Extreme-point
ties may return any maximizer, deterministically the one reached by
leftmost binary-search descent.
"""

from __future__ import annotations

from bisect import bisect_right
from fractions import Fraction
from typing import Optional, Sequence

from .hull_core import (
    HullContractError,
    chain_strictly_above,
    _left_kept_edges,
    _right_popped_front,
    require_finite,
)
from .predicates import (
    DegenerateInputError,
    KernelKind,
    Line,
    Point,
    _line_side,
    slope_cmp,
)

_INF = float("inf")

ExactPoint = tuple[Fraction, Fraction]


def _norm_line(l: Line) -> Line:
    p, q = l
    if p == q:
        raise DegenerateInputError(f"line endpoints coincide: {p!r}")
    require_finite(p)
    require_finite(q)
    return (p, q) if p <= q else (q, p)


def _require_hull(upper: Sequence[Point]) -> None:
    if len(upper) == 0:
        raise HullContractError("query on an empty hull")


# ---------------------------------------------------------------------------
# contains
# ---------------------------------------------------------------------------


def contains(
    upper: Sequence[Point],
    lower_m: Sequence[Point],
    q: Point,
    kernel: KernelKind = KernelKind.EXACT,
) -> bool:
    """Closed-region membership: on the boundary counts as inside."""
    if len(upper) == 0:
        return False
    require_finite(q)
    if chain_strictly_above(upper, q, kernel):
        return False
    return not chain_strictly_above(lower_m, (q[0], -q[1]), kernel)


# ---------------------------------------------------------------------------
# extreme_point
# ---------------------------------------------------------------------------


def extreme_point(
    upper: Sequence[Point],
    lower_m: Sequence[Point],
    d: tuple[float, float],
    kernel: KernelKind = KernelKind.EXACT,
) -> Point:
    """A hull vertex maximizing the dot product with direction d."""
    _require_hull(upper)
    require_finite(d)
    dx, dy = d
    if dx == 0.0 and dy == 0.0:
        raise DegenerateInputError("extreme direction must be nonzero")
    if dy > 0.0:
        return _chain_peak_direction(upper, dx, dy, kernel)
    if dy < 0.0:
        p = _chain_peak_direction(lower_m, dx, -dy, kernel)
        return (p[0], -p[1])
    if dx > 0.0:
        return upper[len(upper) - 1]
    return upper[0]


def _chain_peak_direction(
    chain: Sequence[Point], dx: float, dy: float, kernel: KernelKind
) -> Point:
    """Maximize dx*x + dy*y (dy > 0) over a concave chain: the dot product
    rises along an edge exactly while the edge is steeper than -dx/dy, a
    slope encoded by the segment (0, 0) -> (dy, -dx)."""
    a = (0.0, 0.0)
    b = (dy, -dx)
    lo, hi = 0, len(chain) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if slope_cmp(a, b, chain[mid], chain[mid + 1], kernel) < 0:
            lo = mid + 1
        else:
            hi = mid
    return chain[lo]


def _chain_peak_line(
    chain: Sequence[Point], l: Line, kernel: KernelKind
) -> int:
    """Index maximizing the signed offset from the normalized non-vertical
    line l: the offset rises along an edge exactly while the edge is steeper
    than l, so no direction vector is ever materialized."""
    a, b = l
    lo, hi = 0, len(chain) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if slope_cmp(a, b, chain[mid], chain[mid + 1], kernel) < 0:
            lo = mid + 1
        else:
            hi = mid
    return lo


# ---------------------------------------------------------------------------
# line_hits_hull
# ---------------------------------------------------------------------------


def line_hits_hull(
    upper: Sequence[Point],
    lower_m: Sequence[Point],
    l: Line,
    kernel: KernelKind = KernelKind.EXACT,
) -> bool:
    """True iff the infinite line meets the closed hull region."""
    _require_hull(upper)
    l = _norm_line(l)
    (px, py), (qx, qy) = l
    if px == qx:  # vertical: hit iff x within the hull's x span
        return upper[0][0] <= px <= upper[len(upper) - 1][0]
    # Highest signed offset overall, and lowest via the mirrored chain.
    hi_v = upper[_chain_peak_line(upper, l, kernel)]
    lm = ((px, -py), (qx, -qy))
    lo_m = lower_m[_chain_peak_line(lower_m, _norm_line(lm), kernel)]
    lo_v = (lo_m[0], -lo_m[1])
    return _line_side(l, hi_v, kernel) >= 0 and _line_side(l, lo_v, kernel) <= 0


# ---------------------------------------------------------------------------
# tangents_from_point
# ---------------------------------------------------------------------------


def tangents_from_point(
    upper: Sequence[Point],
    lower_m: Sequence[Point],
    q: Point,
    kernel: KernelKind = KernelKind.EXACT,
) -> tuple[Point, Point]:
    """The two hull vertices adjacent to q in the hull of (hull points + q);
    each with q spans a line supporting the hull.  q must be strictly
    outside.  For a q above (below) the hull the pair is returned in
    increasing-x order; for a q beyond the x span it is (upper-chain
    contact, lower-chain contact)."""
    _require_hull(upper)
    require_finite(q)
    qm = (q[0], -q[1])
    above_up = chain_strictly_above(upper, q, kernel)
    above_lo = chain_strictly_above(lower_m, qm, kernel)
    if not above_up and not above_lo:
        raise HullContractError(f"{q!r} is on or inside the hull")
    n = len(upper)
    in_span = upper[0][0] <= q[0] <= upper[n - 1][0]
    if in_span:
        if above_up:
            left, right = _attach_pair(upper, q, kernel)
            if left is None:  # x-tie with the left extreme: wrap around
                left = _mirrored(lower_m[0])
            if right is None:
                right = _mirrored(lower_m[len(lower_m) - 1])
            return left, right
        left, right = _attach_pair(lower_m, qm, kernel)
        left = upper[0] if left is None else _mirrored(left)
        right = upper[n - 1] if right is None else _mirrored(right)
        return left, right
    # Beyond the x span: one contact on each chain.
    u_left, u_right = _attach_pair(upper, q, kernel)
    l_left, l_right = _attach_pair(lower_m, qm, kernel)
    if q[0] < upper[0][0]:
        return u_right, _mirrored(l_right)
    return u_left, _mirrored(l_left)


def _mirrored(p: Point) -> Point:
    return (p[0], -p[1])


def _attach_pair(
    chain: Sequence[Point], q: Point, kernel: KernelKind
) -> tuple[Optional[Point], Optional[Point]]:
    """The neighbors q would have after insertion into this chain (which
    must be strictly below q): the rightmost surviving vertex on the left
    and the leftmost surviving vertex on the right, without mutating."""
    n = len(chain)
    pos = bisect_right(chain, (q[0], _INF))
    tie = pos >= 1 and chain[pos - 1][0] == q[0]
    n1 = pos - 1 if tie else pos
    i = _left_kept_edges(chain, n1, q, kernel) if n1 >= 2 else n1 - 1
    j = _right_popped_front(chain, pos, q, kernel) if n - pos >= 2 else 0
    left = chain[i] if i >= 0 else None
    right = chain[pos + j] if pos + j < n else None
    return left, right


# ---------------------------------------------------------------------------
# line_intersect
# ---------------------------------------------------------------------------


def line_intersect(
    upper: Sequence[Point],
    lower_m: Sequence[Point],
    l: Line,
    kernel: KernelKind = KernelKind.EXACT,
) -> Optional[tuple[Point, Point]]:
    """Where the infinite line crosses the hull boundary.

    Returns None for a miss, otherwise the two boundary points ordered
    along the line's direction; a grazing contact (vertex or collinear
    edge) yields its point doubled or the edge's endpoints.  Coordinates
    are exact intersections rounded once to float.
    """
    _require_hull(upper)
    norm = _norm_line(l)
    exact = _line_intersect_exact(upper, lower_m, norm, kernel)
    if exact is None:
        return None
    (a, b) = exact
    if norm[0] != l[0]:
        a, b = b, a
    return (float(a[0]), float(a[1])), (float(b[0]), float(b[1]))


def _line_intersect_exact(
    upper: Sequence[Point],
    lower_m: Sequence[Point],
    l: Line,
    kernel: KernelKind,
) -> Optional[tuple[ExactPoint, ExactPoint]]:
    (px, py), (qx, qy) = l
    cands = [pt for pt, _ in _chain_crossings(upper, l, kernel)]
    lm = _norm_line(((px, -py), (qx, -qy)))
    for (cx, cy), _ in _chain_crossings(lower_m, lm, kernel):
        cands.append((cx, -cy))
    if px != qx:
        # Vertical end edges of the hull (a vertical l finds their
        # endpoints through the chains already).
        nu, nl = len(upper), len(lower_m)
        for uv, lvm in (
            (upper[0], lower_m[0]),
            (upper[nu - 1], lower_m[nl - 1]),
        ):
            lv = (lvm[0], -lvm[1])
            if uv[1] == lv[1]:
                continue
            su = _exact_offset(l, uv)
            sl = _exact_offset(l, lv)
            if (su > 0 and sl < 0) or (su < 0 and sl > 0):
                x0 = Fraction(uv[0])
                a_, b_, c_ = _line_coeffs(l)
                cands.append((x0, (c_ - a_ * x0) / b_))
    if not cands:
        return None
    uniq = sorted(set(cands), key=lambda p: _proj(l, p))
    return uniq[0], uniq[-1]


def _line_coeffs(l: Line) -> tuple[Fraction, Fraction, Fraction]:
    """Exact coefficients with a*x + b*y = c the line's equation."""
    (px, py), (qx, qy) = l
    a = Fraction(qy) - Fraction(py)
    b = Fraction(px) - Fraction(qx)
    return a, b, a * Fraction(px) + b * Fraction(py)


def _exact_offset(l: Line, p: Point) -> Fraction:
    a, b, c = _line_coeffs(l)
    return a * Fraction(p[0]) + b * Fraction(p[1]) - c


def _proj(l: Line, p: ExactPoint) -> Fraction:
    (px, py), (qx, qy) = l
    return (Fraction(qx) - Fraction(px)) * p[0] + (Fraction(qy) - Fraction(py)) * p[1]


def _edge_crossing(l: Line, a: Point, b: Point) -> ExactPoint:
    """Exact intersection of l with the edge (a, b) that it straddles."""
    a_, b_, c_ = _line_coeffs(l)
    fa = a_ * Fraction(a[0]) + b_ * Fraction(a[1]) - c_
    fb = a_ * Fraction(b[0]) + b_ * Fraction(b[1]) - c_
    t = fa / (fa - fb)
    return (
        Fraction(a[0]) + t * (Fraction(b[0]) - Fraction(a[0])),
        Fraction(a[1]) + t * (Fraction(b[1]) - Fraction(a[1])),
    )


CrossingSite = tuple[ExactPoint, tuple[str, int]]


def _vertex_site(chain: Sequence[Point], k: int) -> CrossingSite:
    v = chain[k]
    return (Fraction(v[0]), Fraction(v[1])), ("v", k)


def _chain_crossings(
    chain: Sequence[Point], l: Line, kernel: KernelKind
) -> list[CrossingSite]:
    """Up to two points where the normalized line l meets this concave
    chain, found with O(log h) predicate calls.  Each point is paired with
    its host site: ("v", k) for chain vertex k, ("e", k) for the interior
    of edge (k, k+1) -- composite structures certify candidates by host.
    """
    n = len(chain)
    (px, py), (qx, qy) = l
    if px == qx:  # vertical: the x-monotone chain meets it at most once
        if px < chain[0][0] or px > chain[n - 1][0]:
            return []
        k = bisect_right(chain, (px, _INF)) - 1
        v = chain[k]
        if v[0] == px:
            return [_vertex_site(chain, k)]
        return [(_edge_crossing(l, v, chain[k + 1]), ("e", k))]
    m = _chain_peak_line(chain, l, kernel)
    s_m = _line_side(l, chain[m], kernel)
    if s_m < 0:
        return []
    if s_m == 0:
        out = [_vertex_site(chain, m)]
        if m + 1 < n and _line_side(l, chain[m + 1], kernel) == 0:
            out.append(_vertex_site(chain, m + 1))
        return out
    out: list[CrossingSite] = []
    s0 = _line_side(l, chain[0], kernel)
    if s0 == 0:
        out.append(_vertex_site(chain, 0))
    elif s0 < 0:
        # Offsets rise monotonically from below zero at 0 to above at m:
        # find the first nonnegative one.
        lo, hi = 0, m
        while lo < hi:
            mid = (lo + hi) // 2
            if _line_side(l, chain[mid], kernel) < 0:
                lo = mid + 1
            else:
                hi = mid
        if _line_side(l, chain[lo], kernel) == 0:
            out.append(_vertex_site(chain, lo))
        else:
            out.append((_edge_crossing(l, chain[lo - 1], chain[lo]), ("e", lo - 1)))
    s_last = _line_side(l, chain[n - 1], kernel)
    if s_last == 0:
        out.append(_vertex_site(chain, n - 1))
    elif s_last < 0:
        # Offsets fall from the peak: find the last nonnegative one.
        lo, hi = m, n - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if _line_side(l, chain[mid], kernel) < 0:
                hi = mid - 1
            else:
                lo = mid
        if _line_side(l, chain[lo], kernel) == 0:
            out.append(_vertex_site(chain, lo))
        else:
            out.append((_edge_crossing(l, chain[lo], chain[lo + 1]), ("e", lo)))
    return out
