"""Planar geometric predicates in three robustness kernels.

Every hull algorithm in this package is parameterized by a
:class:`KernelKind` and funnels all of its geometric decisions through the
three predicates defined here:

* :func:`slope_less` -- compare the slopes of two segments,
* :func:`above_line` -- is a point strictly above a line,
* :func:`lies_right` -- is a point strictly right of where its segment's
  supporting line crosses a query line.

The kernels trade robustness for speed:

* ``NAIVE`` materializes slope and intercept as floats and compares line
  function values.  It is catastrophically cancellation-prone and is kept
  only so the robustness audit has something to catch.
* ``QUADRATIC`` cross-multiplies, so every decision is the sign of a single
  floating-point 2x2 determinant.  Exact whenever coordinates are integers
  with magnitude at most 2**25 (all differences and products then round
  nowhere; see the test suite's integer-window property).
* ``EXACT`` decides every sign with error-free arithmetic over the exact
  binary values of the input floats.  A semi-static floating-point filter
  certifies the common case; rational arithmetic settles the rest.

All functions are pure and thread-safe.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

Point = tuple[float, float]
#: A line given by two distinct points on it.  Direction is irrelevant:
#: predicates normalize internally (left-to-right; vertical lines
#: bottom-to-top, so "above" a vertical line means strictly left of it).
Line = tuple[Point, Point]


class KernelKind(enum.Enum):
    """Robustness level used for every geometric decision."""

    NAIVE = "naive"
    QUADRATIC = "quadratic"
    EXACT = "exact"


class PredicateError(ValueError):
    """Base class for contract violations inside predicate evaluation."""


class DegenerateInputError(PredicateError):
    """Coincident points (or a vertical line under the naive kernel) where
    a genuine segment is required."""


class ParallelLinesError(PredicateError):
    """``lies_right`` was asked about two lines of equal slope."""


# Semi-static filter for the sign of a 2x2 determinant d1*d2 - d3*d4 of
# float differences: when every difference has relative error <= u (true
# when each is zero or normal) and |d1*d2| + |d3*d4| is large enough that
# the bound itself cannot be drowned by subnormal product error, a result
# exceeding _FILTER_COEFF times that sum has a certified sign.  Everything
# else falls back to exact rational arithmetic over the ORIGINAL
# coordinates (the differences themselves may already be rounded).
_FILTER_COEFF = 3.3306690738754716e-16
_FILTER_FLOOR = 1e-290
_SMALLEST_NORMAL = 2.2250738585072014e-308


def _require_segment(a: Point, b: Point) -> None:
    if a == b:
        raise DegenerateInputError(f"coincident points {a!r} define no line")


def _normalize(l: Line) -> tuple[Point, Point]:
    """Orient a line so its first point is smaller by (x, y)."""
    p, q = l
    _require_segment(p, q)
    if (q[0], q[1]) < (p[0], p[1]):
        return q, p
    return p, q


def _sign(x: float) -> int:
    if x > 0.0:
        return 1
    if x < 0.0:
        return -1
    return 0


def _frac_sign(det: Fraction) -> int:
    if det > 0:
        return 1
    if det < 0:
        return -1
    return 0


def _orient_sign_exact(
    px: float, py: float, qx: float, qy: float, cx: float, cy: float
) -> int:
    """Certified sign of the orientation determinant of (p, q, c):
    +1 when c is strictly left of the directed line p->q."""
    d1 = px - cx
    d2 = qy - cy
    d3 = py - cy
    d4 = qx - cx
    detleft = d1 * d2
    detright = d3 * d4
    det = detleft - detright
    detsum = abs(detleft) + abs(detright)
    if (
        _FILTER_FLOOR < detsum < 1e307
        and (d1 == 0.0 or not -_SMALLEST_NORMAL < d1 < _SMALLEST_NORMAL)
        and (d2 == 0.0 or not -_SMALLEST_NORMAL < d2 < _SMALLEST_NORMAL)
        and (d3 == 0.0 or not -_SMALLEST_NORMAL < d3 < _SMALLEST_NORMAL)
        and (d4 == 0.0 or not -_SMALLEST_NORMAL < d4 < _SMALLEST_NORMAL)
    ):
        err = _FILTER_COEFF * detsum
        if det > err:
            return 1
        if -det > err:
            return -1
    return _frac_sign(
        (Fraction(px) - Fraction(cx)) * (Fraction(qy) - Fraction(cy))
        - (Fraction(py) - Fraction(cy)) * (Fraction(qx) - Fraction(cx))
    )


def _slope_det_sign_frac(a: Point, b: Point, c: Point, d: Point) -> int:
    """Exact rational sign of (b.y-a.y)(d.x-c.x) - (d.y-c.y)(b.x-a.x),
    over the original coordinates (the float differences may be rounded)."""
    return _frac_sign(
        (Fraction(b[1]) - Fraction(a[1])) * (Fraction(d[0]) - Fraction(c[0]))
        - (Fraction(d[1]) - Fraction(c[1])) * (Fraction(b[0]) - Fraction(a[0]))
    )


def _line_side(l: Line, c: Point, kernel: KernelKind) -> int:
    """Three-way side test: +1 strictly above the normalized line, 0 on it,
    -1 strictly below.  For a vertical line, +1 means strictly left."""
    p, q = _normalize(l)
    if kernel is KernelKind.QUADRATIC:
        # Orientation determinant pivoted at the line's second point.
        cross = (q[0] - p[0]) * (c[1] - q[1]) - (c[0] - q[0]) * (q[1] - p[1])
        return _sign(cross)
    if kernel is KernelKind.NAIVE:
        run = q[0] - p[0]
        if run == 0.0:
            raise DegenerateInputError(
                "naive kernel cannot evaluate a vertical line (division)"
            )
        slope = (q[1] - p[1]) / run
        intercept = p[1] - slope * p[0]
        return _sign(c[1] - (slope * c[0] + intercept))
    return _orient_sign_exact(p[0], p[1], q[0], q[1], c[0], c[1])


def slope_cmp(a: Point, b: Point, c: Point, d: Point, kernel: KernelKind) -> int:
    """Three-way slope comparison: the sign of slope(a,b) - slope(c,d).

    Vertical segments compare as slope +infinity (two verticals are equal);
    the naive kernel cannot divide by zero and raises instead.  This is the
    primitive behind :func:`slope_less`; chain-maintenance loops call it
    directly so ties (collinear candidates) stay distinguishable.
    """
    _require_segment(a, b)
    _require_segment(c, d)
    dx1 = b[0] - a[0]
    dx2 = d[0] - c[0]
    if kernel is KernelKind.NAIVE:
        if dx1 == 0.0 or dx2 == 0.0:
            raise DegenerateInputError(
                "naive kernel cannot evaluate a vertical segment (division)"
            )
        return _sign((b[1] - a[1]) / dx1 - (d[1] - c[1]) / dx2)
    if dx1 == 0.0 and dx2 == 0.0:
        return 0
    if dx1 == 0.0:
        return 1
    if dx2 == 0.0:
        return -1
    # sign(slope1 - slope2) = sign(dy1*dx2 - dy2*dx1) * sign(dx1) * sign(dx2)
    flip = 1 if (dx1 > 0.0) == (dx2 > 0.0) else -1
    if kernel is KernelKind.QUADRATIC:
        lhs = (b[1] - a[1]) * dx2
        rhs = (d[1] - c[1]) * dx1
        if lhs == rhs:
            return 0
        return flip if lhs > rhs else -flip
    # Exact kernel, hot path: the certified determinant filter inline;
    # only filter failures pay for rational arithmetic.
    d1 = b[1] - a[1]
    d3 = d[1] - c[1]
    detleft = d1 * dx2
    detright = d3 * dx1
    det = detleft - detright
    detsum = abs(detleft) + abs(detright)
    if (
        _FILTER_FLOOR < detsum < 1e307
        and (d1 == 0.0 or not -_SMALLEST_NORMAL < d1 < _SMALLEST_NORMAL)
        and (dx2 == 0.0 or not -_SMALLEST_NORMAL < dx2 < _SMALLEST_NORMAL)
        and (d3 == 0.0 or not -_SMALLEST_NORMAL < d3 < _SMALLEST_NORMAL)
        and (dx1 == 0.0 or not -_SMALLEST_NORMAL < dx1 < _SMALLEST_NORMAL)
    ):
        err = _FILTER_COEFF * detsum
        if det > err:
            return flip
        if -det > err:
            return -flip
    return flip * _slope_det_sign_frac(a, b, c, d)


def slope_less(
    a: Point, b: Point, c: Point, d: Point, kernel: KernelKind = KernelKind.EXACT
) -> bool:
    """True iff the slope of line(a, b) is strictly less than that of
    line(c, d).

    Raises :class:`DegenerateInputError` if either point pair coincides
    (or contains a vertical segment under the naive kernel).
    """
    return slope_cmp(a, b, c, d, kernel) < 0


def above_line(l: Line, c: Point, kernel: KernelKind = KernelKind.EXACT) -> bool:
    """True iff ``c`` lies strictly above the line ``l``.

    ``l`` is oriented so its first point has the smaller x (ties broken by
    smaller y); a point exactly on the line is NOT above it.  The strictness
    is what makes incremental hulls canonical: a point on a hull edge never
    re-enters the hull.
    """
    return _line_side(l, c, kernel) > 0


def lies_right(
    l: Line, u: Point, v: Point, kernel: KernelKind = KernelKind.EXACT
) -> bool:
    """True iff ``u`` lies strictly right of the point where line(u, v)
    crosses ``l``.

    Decided purely from the slope order of the two lines and the side of
    ``l`` that ``u`` falls on -- the crossing point itself is never
    computed, so no rounding is introduced:

    * slope(l) < slope(u,v): right of the crossing means strictly above l;
    * slope(l) > slope(u,v): right of the crossing means strictly below l;
    * ``u`` exactly on ``l`` IS the crossing point, hence not right of it.

    Raises :class:`ParallelLinesError` when the slopes are equal.
    """
    cmp = slope_cmp(l[0], l[1], u, v, kernel)
    if cmp == 0:
        raise ParallelLinesError(f"line {l!r} is parallel to line({u!r}, {v!r})")
    side = _line_side(l, u, kernel)
    return side > 0 if cmp < 0 else side < 0


@dataclass(frozen=True)
class Disagreement:
    """First witnessed divergence of a kernel from the exact kernel."""

    predicate: str
    args: tuple
    got: object
    expected: object


@dataclass(frozen=True)
class DisagreementReport:
    """Outcome of auditing one kernel against the exact kernel."""

    checked: int
    count: int
    first: Optional[Disagreement]

    @property
    def clean(self) -> bool:
        return self.count == 0


def _outcome(fn, *args) -> object:
    """Run a predicate; degenerate/parallel contract errors are outcomes too
    (a kernel that wrongly judges two lines parallel has disagreed)."""
    try:
        return fn(*args)
    except PredicateError as exc:
        return type(exc).__name__


def _sample_quads(pts: Sequence[Point]) -> list[tuple[Point, Point, Point, Point]]:
    """Deterministic sample of point quadruples: consecutive runs of the
    sorted input plus geometrically strided runs, so both near-collinear
    neighbors and long-range combinations are exercised."""
    n = len(pts)
    quads: list[tuple[Point, Point, Point, Point]] = []
    stride = 1
    while stride <= max(1, (n - 1) // 3):
        for i in range(0, n - 3 * stride, stride):
            quads.append(
                (pts[i], pts[i + stride], pts[i + 2 * stride], pts[i + 3 * stride])
            )
        stride *= 2
    return quads


def audit_kernels(
    points: Sequence[Point], kernel: KernelKind = KernelKind.QUADRATIC
) -> DisagreementReport:
    """Evaluate all three predicates over a deterministic sample of tuples
    from ``points`` under ``kernel`` and under the exact kernel, reporting
    how many decisions diverged and the first witness.

    Vertical point pairs are skipped so the same sample is valid for every
    kernel (the naive kernel cannot divide by a zero x-difference).
    """
    pts = sorted(set(points))
    checked = 0
    count = 0
    first: Optional[Disagreement] = None

    def check(name: str, fn, *args) -> None:
        nonlocal checked, count, first
        expected = _outcome(fn, *args, KernelKind.EXACT)
        got = _outcome(fn, *args, kernel)
        checked += 1
        if got != expected:
            count += 1
            if first is None:
                first = Disagreement(name, args, got, expected)

    for a, b, c, d in _sample_quads(pts):
        if a[0] == b[0] or c[0] == d[0]:
            continue
        check("slope_less", slope_less, a, b, c, d)
        check("above_line", above_line, (a, b), c)
        check("lies_right", lies_right, (a, b), c, d)
    return DisagreementReport(checked=checked, count=count, first=first)
