"""Independent reference implementations for verification.

Everything in this module is deliberately simple, exact, and structurally
different from the engine it judges: plain rational arithmetic
(:class:`fractions.Fraction` over the binary values of the input floats),
sort-then-scan construction instead of incremental insertion, and linear
scans instead of binary searches.  The test suite and the ``verify``
command treat these as ground truth.

A NumPy pre-filter (:func:`cull_upper_candidates`) makes the rational
oracle affordable at large n: a point strictly lower than some point on
its left AND some point on its right (ties in x included) can never be an
upper-hull vertex, so only the survivors need exact treatment.
"""

from __future__ import annotations

from bisect import bisect_right
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

Point = tuple[float, float]


def _cross(a: Point, b: Point, c: Point) -> int:
    """Exact orientation test of (a, b, c): positive when c is strictly
    left of the directed line a->b.

    Floats are dyadic rationals, so clearing the binary exponents turns
    the cross product into plain integer arithmetic; the result is the
    true value scaled by a positive constant, hence sign-faithful."""
    nax, dax = a[0].as_integer_ratio()
    nay, day = a[1].as_integer_ratio()
    nbx, dbx = b[0].as_integer_ratio()
    nby, dby = b[1].as_integer_ratio()
    ncx, dcx = c[0].as_integer_ratio()
    ncy, dcy = c[1].as_integer_ratio()
    dx = max(dax, dbx, dcx)  # denominators are powers of two; max is the lcm
    dy = max(day, dby, dcy)
    ax, bx, cx = nax * (dx // dax), nbx * (dx // dbx), ncx * (dx // dcx)
    ay, by, cy = nay * (dy // day), nby * (dy // dby), ncy * (dy // dcy)
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


def cull_upper_candidates(points: Sequence[Point]) -> list[Point]:
    """Sound superset filter for upper-hull candidacy.

    If some point weakly left of p and some point weakly right of p are both
    strictly higher, then p is either x-dominated or strictly under a chord,
    and can never be an upper-hull vertex.  Never drops a true vertex.
    """
    if len(points) <= 2:
        return sorted(set(points))
    arr = np.asarray(sorted(set(points)), dtype=np.float64)
    y = arr[:, 1]
    left_max = np.maximum.accumulate(y)
    right_max = np.maximum.accumulate(y[::-1])[::-1]
    keep = ~((left_max > y) & (right_max > y))
    return [tuple(p) for p in arr[keep]]


def oracle_upper_chain(points: Iterable[Point]) -> list[Point]:
    """Canonical upper chain by sort-and-scan in exact rational arithmetic.

    Canonical means: strictly increasing x, strictly decreasing slopes, no
    collinear triple, and of x-tied points only the highest survives.
    """
    pts = cull_upper_candidates(list(points))
    chain: list[Point] = []
    for p in pts:
        if chain and chain[-1][0] == p[0]:
            chain.pop()  # sorted by (x, y): p is the higher twin
        while len(chain) >= 2 and _cross(chain[-2], chain[-1], p) >= 0:
            chain.pop()
        chain.append(p)
    return chain


def oracle_lower_chain(points: Iterable[Point]) -> list[Point]:
    """Canonical lower chain, via the upper chain of the y-negated set."""
    return [(x, -y) for x, y in oracle_upper_chain((x, -y) for x, y in points)]


def oracle_hull_cycle(points: Iterable[Point]) -> list[Point]:
    """Counterclockwise hull cycle starting at the lowest-then-leftmost...

    Actually ordered as: lower chain left-to-right, then upper chain
    right-to-left, shared endpoints deduplicated.  Matches the canonical
    cycle the structures report."""
    pts = list(points)
    if not pts:
        return []
    up = oracle_upper_chain(pts)
    lo = oracle_lower_chain(pts)
    cycle = list(lo)
    back = up[::-1]
    if back and cycle and back[0] == cycle[-1]:
        back = back[1:]
    if back and cycle and back[-1] == cycle[0]:
        back = back[:-1]
    return cycle + back


def brute_upper_chain_small(points: Sequence[Point]) -> list[Point]:
    """Quadratic-ish per-point membership test, for small property tests
    that cross-validate :func:`oracle_upper_chain`: a point is an
    upper-chain vertex iff it is not x-dominated and not on-or-under any
    chord of two points strictly straddling it in x."""
    pts = sorted(set(points))
    out: list[Point] = []
    for p in pts:
        if any(a[0] == p[0] and a[1] > p[1] for a in pts):
            continue
        covered = False
        for a in pts:
            if a[0] >= p[0]:
                continue
            for b in pts:
                if b[0] <= p[0]:
                    continue
                if _cross(a, b, p) <= 0:
                    covered = True
                    break
            if covered:
                break
        if not covered:
            out.append(p)
    return out


def oracle_contains(points: Sequence[Point], q: Point) -> bool:
    """Closed-region containment by exact tests against both chains."""
    if not points:
        return False
    up = oracle_upper_chain(points)
    lo = [(x, -y) for x, y in oracle_lower_chain(points)]
    return oracle_contains_chains(up, lo, q)


def oracle_contains_chains(
    up: Sequence[Point], lower_m: Sequence[Point], q: Point
) -> bool:
    """Containment given precomputed chains (the lower one y-negated), so a
    test can amortize chain construction over many probes."""
    if _strictly_outside(up, q):
        return False
    return not _strictly_outside(lower_m, (q[0], -q[1]))


def _strictly_outside(chain: Sequence[Point], q: Point) -> bool:
    """True iff q is strictly above the chain or strictly outside its
    x-span.  The bracketing edge is found by bisection on x (float
    comparisons are exact) and judged in rational arithmetic."""
    x = q[0]
    if x < chain[0][0] or x > chain[-1][0]:
        return True
    k = bisect_right(chain, (x, float("inf"))) - 1
    if chain[k][0] == x:
        return q[1] > chain[k][1]
    return _cross(chain[k], chain[k + 1], q) > 0


def oracle_extreme_point(vertices: Sequence[Point], d: tuple[float, float]) -> Point:
    """Argmax of the dot product with d over the given vertices, by linear
    scan in exact arithmetic.  Ties return the first maximizer in input
    order (callers treat any maximizer as acceptable)."""
    dx, dy = Fraction(d[0]), Fraction(d[1])
    best = vertices[0]
    best_val = dx * Fraction(best[0]) + dy * Fraction(best[1])
    for p in vertices[1:]:
        val = dx * Fraction(p[0]) + dy * Fraction(p[1])
        if val > best_val:
            best, best_val = p, val
    return best


def oracle_line_hits_hull(points: Sequence[Point], l: tuple[Point, Point]) -> bool:
    """True iff the line through l meets the closed convex hull of the
    points: some pair of hull-cycle vertices lies on opposite sides (or any
    vertex lies exactly on the line)."""
    cycle = oracle_hull_cycle(points)
    if not cycle:
        return False
    signs = [_sign(_cross(l[0], l[1], p)) for p in cycle]
    return min(signs) <= 0 <= max(signs)


def oracle_upper_crossings(
    chain: Sequence[Point], l: tuple[Point, Point]
) -> list[tuple[Fraction, Fraction]]:
    """All points where the line l meets the concave chain, as exact
    coordinate pairs in left-to-right order: on-line vertices count once,
    crossed open edge interiors get their exact intersection point."""
    (px, py), (qx, qy) = l
    a_ = Fraction(qy) - Fraction(py)  # line: a*x + b*y = c
    b_ = Fraction(px) - Fraction(qx)
    c_ = a_ * Fraction(px) + b_ * Fraction(py)
    out: list[tuple[Fraction, Fraction]] = []
    vals = [a_ * Fraction(x) + b_ * Fraction(y) - c_ for x, y in chain]
    for k, v in enumerate(vals):
        if v == 0:
            out.append((Fraction(chain[k][0]), Fraction(chain[k][1])))
        if k + 1 < len(vals) and (vals[k] > 0) != (vals[k + 1] > 0) and vals[
            k
        ] != 0 and vals[k + 1] != 0:
            x1, y1 = chain[k]
            x2, y2 = chain[k + 1]
            t = vals[k] / (vals[k] - vals[k + 1])
            out.append(
                (
                    Fraction(x1) + t * (Fraction(x2) - Fraction(x1)),
                    Fraction(y1) + t * (Fraction(y2) - Fraction(y1)),
                )
            )
    return out


def oracle_is_tangent_vertex(points: Sequence[Point], q: Point, v: Point) -> bool:
    """Support test for tangents from an exterior point: v is a valid
    tangent vertex iff v is a hull-cycle vertex and every hull vertex lies
    weakly on one side of the line through q and v."""
    cycle = oracle_hull_cycle(points)
    if v not in cycle or v == q:
        return False
    signs = [_sign(_cross(q, v, p)) for p in cycle if p != v]
    return all(s >= 0 for s in signs) or all(s <= 0 for s in signs)


def _sign(v: Fraction) -> int:
    if v > 0:
        return 1
    if v < 0:
        return -1
    return 0


def oracle_line_clip(
    points: Sequence[Point], l: tuple[Point, Point]
) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]] | None:
    """Exact endpoints of line ∩ hull, or None when the line misses.

    Independent method: parametrize the line as p + t*d and clip the
    parameter interval against every half-plane of the hull cycle.  A
    tangency yields a doubled point; the pair is ordered by increasing t
    (the direction from the line's first endpoint to its second).
    Degenerate hulls (a single point, a collinear segment) are handled by
    direct containment checks instead of half-plane clipping, which works
    only for full-dimensional hulls.
    """
    cycle = oracle_hull_cycle(points)
    if not cycle:
        return None
    (px, py), (qx, qy) = l
    p = (Fraction(px), Fraction(py))
    d = (Fraction(qx) - Fraction(px), Fraction(qy) - Fraction(py))
    if d == (0, 0):
        raise ValueError("degenerate line")

    def at(t: Fraction) -> tuple[Fraction, Fraction]:
        return (p[0] + t * d[0], p[1] + t * d[1])

    if len(cycle) == 1:
        v = cycle[0]
        if _cross(l[0], l[1], v) != 0:
            return None
        pt = (Fraction(v[0]), Fraction(v[1]))
        return pt, pt
    if len(cycle) == 2:
        a, b = cycle
        e = (Fraction(b[0]) - Fraction(a[0]), Fraction(b[1]) - Fraction(a[1]))
        denom = d[0] * e[1] - d[1] * e[0]
        if denom == 0:
            if _cross(l[0], l[1], a) != 0:
                return None
            # Collinear overlap: the whole segment, ordered along d.
            ta = next(
                (Fraction(a[k]) - p[k]) / d[k] for k in (0, 1) if d[k] != 0
            )
            tb = next(
                (Fraction(b[k]) - p[k]) / d[k] for k in (0, 1) if d[k] != 0
            )
            lo, hi = (ta, tb) if ta <= tb else (tb, ta)
            return at(lo), at(hi)
        ap = (Fraction(a[0]) - p[0], Fraction(a[1]) - p[1])
        t = (ap[0] * e[1] - ap[1] * e[0]) / denom
        s = (ap[0] * d[1] - ap[1] * d[0]) / denom
        if 0 <= s <= 1:
            return at(t), at(t)
        return None

    lo: Fraction | None = None
    hi: Fraction | None = None
    m = len(cycle)
    for k in range(m):
        a = cycle[k]
        b = cycle[(k + 1) % m]
        ex = Fraction(b[0]) - Fraction(a[0])
        ey = Fraction(b[1]) - Fraction(a[1])
        # Inside means cross(a, b, x) >= 0; substitute x = p + t d.
        c0 = ex * (p[1] - Fraction(a[1])) - ey * (p[0] - Fraction(a[0]))
        c1 = ex * d[1] - ey * d[0]
        if c1 == 0:
            if c0 < 0:
                return None
            continue
        bound = -c0 / c1
        if c1 > 0:
            if lo is None or bound > lo:
                lo = bound
        else:
            if hi is None or bound < hi:
                hi = bound
    assert lo is not None and hi is not None
    if lo > hi:
        return None
    return at(lo), at(hi)
