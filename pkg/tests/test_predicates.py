"""Predicate kernels: frozen examples, oracle agreement, algebraic laws."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from inchull.predicates import (
    DegenerateInputError,
    KernelKind,
    ParallelLinesError,
    audit_kernels,
    above_line,
    lies_right,
    slope_less,
)

ALL_KERNELS = list(KernelKind)
ROBUST_KERNELS = [KernelKind.QUADRATIC, KernelKind.EXACT]

finite_floats = st.floats(
    allow_nan=False, allow_infinity=False, min_value=-1e12, max_value=1e12
)
wild_floats = st.floats(allow_nan=False, allow_infinity=False)
points = st.tuples(finite_floats, finite_floats)
wild_points = st.tuples(wild_floats, wild_floats)
# Integer window in which the quadratic kernel is provably exact.
int_coords = st.integers(min_value=-(2**25), max_value=2**25).map(float)
int_points = st.tuples(int_coords, int_coords)


def exact_slope_cmp(a, b, c, d):
    """Independent rational oracle for the slope comparison (finite slopes)."""
    s1 = (Fraction(b[1]) - Fraction(a[1])) / (Fraction(b[0]) - Fraction(a[0]))
    s2 = (Fraction(d[1]) - Fraction(c[1])) / (Fraction(d[0]) - Fraction(c[0]))
    return (s1 > s2) - (s1 < s2)


def exact_side(l, c):
    """Independent rational oracle for the side of the normalized line."""
    p, q = sorted(l)
    v = (Fraction(q[0]) - Fraction(p[0])) * (Fraction(c[1]) - Fraction(p[1])) - (
        Fraction(q[1]) - Fraction(p[1])
    ) * (Fraction(c[0]) - Fraction(p[0]))
    return (v > 0) - (v < 0)


# --- frozen examples -------------------------------------------------------


@pytest.mark.parametrize("kernel", ALL_KERNELS)
def test_slope_less_frozen(kernel):
    assert slope_less((0, 0), (1, 1), (0, 0), (1, 2), kernel) is True
    assert slope_less((0, 0), (2, 2), (1, 1), (3, 3), kernel) is False
    assert slope_less((0, 0), (3, 1), (0, 0), (2, 1), kernel) is True


@pytest.mark.parametrize("kernel", ALL_KERNELS)
def test_above_line_frozen(kernel):
    assert above_line(((0, 0), (2, 0)), (1, 1), kernel) is True
    assert above_line(((0, 0), (2, 2)), (1, 1), kernel) is False
    assert above_line(((0, 0), (2, 1)), (1, 0.4), kernel) is False


@pytest.mark.parametrize("kernel", ALL_KERNELS)
def test_lies_right_frozen(kernel):
    assert lies_right(((0, 0), (1, 1)), (2, 0), (3, 0.5), kernel) is True
    # Line y=0 meets line(u,v): y=2x-1 at x=0.5; u=(1,1) has x=1 > 0.5, so u
    # is strictly right of the crossing (value fixed from the rational
    # oracle before freezing).
    assert lies_right(((0, 0), (1, 0)), (1, 1), (2, 3), kernel) is True
    assert lies_right(((0, 0), (1, 2)), (0, 1), (1, 1), kernel) is False


@pytest.mark.parametrize("kernel", ALL_KERNELS)
def test_degenerate_inputs_raise(kernel):
    with pytest.raises(DegenerateInputError):
        slope_less((1, 1), (1, 1), (0, 0), (1, 2), kernel)
    with pytest.raises(DegenerateInputError):
        slope_less((0, 0), (1, 2), (3, 3), (3, 3), kernel)
    with pytest.raises(DegenerateInputError):
        above_line(((2, 5), (2, 5)), (0, 0), kernel)
    with pytest.raises(ParallelLinesError):
        lies_right(((0, 0), (1, 1)), (0, 1), (2, 3), kernel)


def test_naive_kernel_rejects_verticals():
    with pytest.raises(DegenerateInputError):
        slope_less((1, 0), (1, 5), (0, 0), (1, 1), KernelKind.NAIVE)
    with pytest.raises(DegenerateInputError):
        above_line(((1, 0), (1, 5)), (0, 0), KernelKind.NAIVE)


@pytest.mark.parametrize("kernel", ROBUST_KERNELS)
def test_vertical_slope_convention(kernel):
    # A vertical line compares as slope +infinity; two verticals are equal.
    assert slope_less((0, 0), (0, 1), (5, 0), (6, 9), kernel) is False
    assert slope_less((5, 0), (6, 9), (0, 0), (0, 1), kernel) is True
    assert slope_less((0, 0), (0, 1), (3, 0), (3, 7), kernel) is False
    assert slope_less((3, 0), (3, 7), (0, 0), (0, 1), kernel) is False
    # "Above" a vertical line (oriented by increasing y) means strictly left.
    assert above_line(((2, 0), (2, 1)), (1, 50), kernel) is True
    assert above_line(((2, 0), (2, 1)), (3, 50), kernel) is False
    assert above_line(((2, 0), (2, 1)), (2, 50), kernel) is False


# --- oracle agreement ------------------------------------------------------


@given(a=wild_points, b=wild_points, c=wild_points, d=wild_points)
def test_exact_slope_cmp_matches_rational_oracle(a, b, c, d):
    if a == b or c == d or a[0] == b[0] or c[0] == d[0]:
        return
    got = slope_less(a, b, c, d, KernelKind.EXACT)
    assert got == (exact_slope_cmp(a, b, c, d) < 0)


@given(p=wild_points, q=wild_points, c=wild_points)
def test_exact_above_line_matches_rational_oracle(p, q, c):
    if p == q:
        return
    assert above_line((p, q), c, KernelKind.EXACT) == (exact_side((p, q), c) > 0)


@given(p=points, q=points, u=points, v=points)
def test_lies_right_matches_intersection_oracle(p, q, u, v):
    """The slope-order/side formulation equals an explicit crossing-point
    comparison computed in rational arithmetic."""
    if p == q or u == v or u[0] == v[0]:
        return
    F = Fraction
    if p[0] == q[0]:
        ix = F(p[0])  # vertical query line: crossing at its x
    else:
        sl = (F(q[1]) - F(p[1])) / (F(q[0]) - F(p[0]))
        su = (F(v[1]) - F(u[1])) / (F(v[0]) - F(u[0]))
        if sl == su:
            with pytest.raises(ParallelLinesError):
                lies_right((p, q), u, v, KernelKind.EXACT)
            return
        # a1*x + b1 = a2*x + b2
        b1 = F(p[1]) - sl * F(p[0])
        b2 = F(u[1]) - su * F(u[0])
        ix = (b2 - b1) / (sl - su)
    assert lies_right((p, q), u, v, KernelKind.EXACT) == (F(u[0]) > ix)


@given(a=int_points, b=int_points, c=int_points, d=int_points)
def test_quadratic_exact_on_integer_window(a, b, c, d):
    """Integer coordinates within 2**25: every difference and product is
    exactly representable, so the quadratic kernel equals the exact one."""
    if a == b or c == d:
        return
    assert slope_less(a, b, c, d, KernelKind.QUADRATIC) == slope_less(
        a, b, c, d, KernelKind.EXACT
    )
    assert above_line((a, b), c, KernelKind.QUADRATIC) == above_line(
        (a, b), c, KernelKind.EXACT
    )
    if a[0] != b[0] or c[0] != d[0]:
        try:
            got = lies_right((a, b), c, d, KernelKind.QUADRATIC)
        except ParallelLinesError:
            got = "parallel"
        try:
            want = lies_right((a, b), c, d, KernelKind.EXACT)
        except ParallelLinesError:
            want = "parallel"
        assert got == want


# --- algebraic laws --------------------------------------------------------


@pytest.mark.parametrize("kernel", ROBUST_KERNELS)
@given(a=points, b=points, c=points, d=points)
@settings(max_examples=50)
def test_slope_less_antisymmetry(kernel, a, b, c, d):
    if a == b or c == d:
        return
    assert not (
        slope_less(a, b, c, d, kernel) and slope_less(c, d, a, b, kernel)
    )


@given(p=points, q=points, t=st.floats(min_value=0, max_value=1))
def test_above_line_strict_on_the_line(p, q, t):
    """A point exactly on the line is never above it (exact kernel); points
    constructed as exact affine combinations with dyadic t stay on it."""
    if p == q:
        return
    c = (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))
    if exact_side((p, q), c) == 0:
        assert above_line((p, q), c, KernelKind.EXACT) is False
    assert above_line((p, q), p, KernelKind.EXACT) is False
    assert above_line((p, q), q, KernelKind.EXACT) is False


# --- audit_kernels ---------------------------------------------------------


def test_audit_empty_input():
    report = audit_kernels([], KernelKind.NAIVE)
    assert report.count == 0 and report.checked == 0 and report.clean


def test_audit_exact_against_itself_is_clean():
    pts = [(float(i), float(i * i % 7)) for i in range(50)]
    assert audit_kernels(pts, KernelKind.EXACT).clean


def test_audit_flags_naive_on_near_degenerate_sample():
    # A gently convex arc far from the origin: materializing intercepts
    # cancels catastrophically in the naive kernel, while single cross
    # products (quadratic kernel) survive.
    pts = [(1e15 + i * 512.0, 1.0 + i * 1e-3 + (i * i) * 1e-9) for i in range(64)]
    naive = audit_kernels(pts, KernelKind.NAIVE)
    assert naive.count >= 1
    assert naive.first is not None
    assert audit_kernels(pts, KernelKind.QUADRATIC).clean
