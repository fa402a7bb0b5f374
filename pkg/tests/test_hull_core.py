"""Chain engine and quarter-hull operations against the rational oracles."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from inchull.hull_core import (
    FullHull,
    HullContractError,
    Orientation,
    QuarterHull,
    UpperHull,
    chain_apex_index,
    chain_insert,
    chain_strictly_above,
    compose_upper,
    graham,
    mirror_x,
    mirror_y,
    quick_insert,
    quick_scan,
    scan,
    split_chain,
    upper_chain,
)
from inchull.predicates import KernelKind
from inchull.oracles import oracle_contains, oracle_upper_chain

EXACT = KernelKind.EXACT
KERNELS = [KernelKind.QUADRATIC, KernelKind.EXACT]

coords = st.floats(
    allow_nan=False, allow_infinity=False, min_value=-1e6, max_value=1e6
)
grid_coords = st.integers(min_value=-8, max_value=8).map(float)
float_points = st.tuples(coords, coords)
grid_points = st.tuples(grid_coords, grid_coords)
float_sets = st.lists(float_points, min_size=1, max_size=48)
grid_sets = st.lists(grid_points, min_size=1, max_size=32)


# --- canonical construction ------------------------------------------------


@given(pts=float_sets)
def test_upper_chain_matches_oracle_floats(pts):
    assert upper_chain(sorted(pts), EXACT) == oracle_upper_chain(pts)


@given(pts=grid_sets)
def test_upper_chain_matches_oracle_grid(pts):
    assert upper_chain(sorted(pts), EXACT) == oracle_upper_chain(pts)


def test_upper_chain_frozen_examples():
    assert upper_chain([(0.0, 0.0), (2.0, 2.0), (4.0, 0.0)], EXACT) == [
        (0.0, 0.0),
        (2.0, 2.0),
        (4.0, 0.0),
    ]
    # Collinear middle points vanish.
    assert upper_chain([(0.0, 0.0), (1.0, 1.0), (2.0, 2.0)], EXACT) == [
        (0.0, 0.0),
        (2.0, 2.0),
    ]
    # Of x-tied points only the highest survives; duplicates are no-ops.
    assert upper_chain(
        sorted([(0.0, 0.0), (0.0, 5.0), (3.0, 1.0), (3.0, 1.0)]), EXACT
    ) == [(0.0, 5.0), (3.0, 1.0)]


# --- incremental insertion == batch ----------------------------------------


@given(pts=grid_sets, seed=st.integers(0, 2**16))
def test_insertion_order_independence(pts, seed):
    batch = upper_chain(sorted(pts), EXACT)
    shuffled = list(pts)
    random.Random(seed).shuffle(shuffled)
    chain = []
    for p in shuffled:
        chain_insert(chain, p, EXACT)
    assert chain == batch


@given(pts=float_sets)
@settings(max_examples=150)
def test_incremental_matches_oracle_floats(pts):
    chain = []
    for p in pts:
        chain_insert(chain, p, EXACT)
    assert chain == oracle_upper_chain(pts)


@given(pts=grid_sets)
def test_insert_outcome_accounting(pts):
    """Pop counts reconcile with length changes, and nothing is popped twice:
    total pops over a run never exceeds the number of admitted vertices."""
    chain = []
    total_pops = 0
    admitted = 0
    for p in pts:
        before = len(chain)
        inserted, left, right = chain_insert(chain, p, EXACT)
        if inserted:
            admitted += 1
            assert len(chain) == before + 1 - left - right
        else:
            assert (left, right) == (0, 0)
            assert len(chain) == before
        total_pops += left + right
    assert total_pops <= admitted
    assert len(chain) == admitted - total_pops


@given(pts=grid_sets, q=grid_points)
def test_duplicate_and_interior_inserts_are_noops(pts, q):
    chain = upper_chain(sorted(pts), EXACT)
    snapshot = list(chain)
    if not chain_strictly_above(chain, q, EXACT):
        assert chain_insert(chain, q, EXACT) == (False, 0, 0)
        assert chain == snapshot
    for v in snapshot:
        assert chain_insert(chain, v, EXACT) == (False, 0, 0)
    assert chain == snapshot


@given(pts=grid_sets, q=grid_points)
def test_strictly_above_agrees_with_oracle(pts, q):
    chain = upper_chain(sorted(pts), EXACT)
    got = chain_strictly_above(chain, q, EXACT)
    # Strictly above the chain == adding q would change the chain.
    want = oracle_upper_chain(pts + [q]) != chain
    assert got == want


# --- frozen quick_scan / chain_insert examples ------------------------------


@pytest.mark.parametrize("kernel", KERNELS)
def test_quick_scan_frozen_examples(kernel):
    h = QuarterHull(((0.0, 0.0), (1.0, 3.0), (2.0, 5.0), (3.0, 6.0)))
    assert quick_scan(h, (4.0, 10.0), kernel) == 1
    h2 = QuarterHull(((0.0, 0.0), (1.0, 1.0)))
    assert quick_scan(h2, (2.0, 1.5), kernel) == 1
    single = QuarterHull(((0.0, 0.0),))
    assert quick_scan(single, (1.0, 1.0), kernel) == 0


@pytest.mark.parametrize("kernel", KERNELS)
def test_scan_equals_quick_scan_truncation(kernel):
    h = QuarterHull(((0.0, 0.0), (1.0, 3.0), (2.0, 5.0), (3.0, 6.0)))
    q = (4.0, 10.0)
    i = quick_scan(h, q, kernel)
    assert scan(h, q, kernel).vertices == h.vertices[: i + 1] + (q,)


def test_scan_requires_new_rightmost():
    h = QuarterHull(((0.0, 0.0), (1.0, 3.0)))
    with pytest.raises(HullContractError):
        scan(h, (1.0, 9.0))
    with pytest.raises(HullContractError):
        scan(h, (0.5, 9.0))


def test_chain_insert_splice_example():
    chain = [(0.0, 0.0), (1.0, 3.0), (2.0, 5.0), (3.0, 6.0)]
    assert chain_insert(chain, (1.0, 9.0), EXACT) == (True, 1, 1)
    assert chain == [(0.0, 0.0), (1.0, 9.0), (3.0, 6.0)]


@given(pts=grid_sets, q=grid_points)
def test_chain_endpoints_survive_when_kept(pts, q):
    """The leftmost and rightmost vertices can only be displaced by a new
    x-extreme or an x-tie, never by interior pops."""
    chain = upper_chain(sorted(pts), EXACT)
    first, last = chain[0], chain[-1]
    chain_insert(chain, q, EXACT)
    if q[0] > first[0]:
        assert chain[0] == first
    if q[0] < last[0]:
        assert chain[-1] == last


# --- quarter-hull data types ------------------------------------------------


def test_quarter_hull_invariants():
    QuarterHull(((0.0, 0.0), (1.0, 2.0)))  # rising ok
    with pytest.raises(HullContractError):
        QuarterHull(())
    with pytest.raises(HullContractError):
        QuarterHull(((0.0, 0.0), (0.0, 1.0)))  # x-tie
    with pytest.raises(HullContractError):
        QuarterHull(((0.0, 0.0), (1.0, 0.0)))  # flat edge in rising quarter
    # Falling quarter may open with exactly one flat edge (apex tie)...
    QuarterHull(((0.0, 4.0), (1.0, 4.0), (2.0, 1.0)), Orientation.NABLA)
    # ...but not a later one.
    with pytest.raises(HullContractError):
        QuarterHull(((0.0, 4.0), (1.0, 3.0), (2.0, 3.0)), Orientation.NABLA)


def test_quarter_hull_validate_flags_collinear():
    h = QuarterHull.__new__(QuarterHull)
    object.__setattr__(h, "vertices", ((0.0, 0.0), (1.0, 1.0), (2.0, 2.0)))
    object.__setattr__(h, "orientation", Orientation.GAMMA)
    with pytest.raises(HullContractError):
        h.validate()


def test_graham_returns_left_quarter():
    pts = sorted([(0.0, 0.0), (1.0, 3.0), (2.0, 4.0), (3.0, 2.0), (4.0, 1.0)])
    g = graham(pts)
    assert g.vertices == ((0.0, 0.0), (1.0, 3.0), (2.0, 4.0))
    assert g.orientation is Orientation.GAMMA


def test_graham_rejects_unsorted():
    with pytest.raises(HullContractError):
        graham([(1.0, 0.0), (0.0, 0.0)])


def test_quick_insert_contract():
    h = QuarterHull(((0.0, 0.0), (2.0, 3.0)))
    grown = quick_insert(h, (1.0, 2.0))
    assert grown.vertices == ((0.0, 0.0), (1.0, 2.0), (2.0, 3.0))
    with pytest.raises(HullContractError):
        quick_insert(h, (1.0, 1.5))  # exactly on the edge: not strictly above


def test_compose_and_split():
    gamma = QuarterHull(((0.0, 0.0), (2.0, 4.0)))
    nabla = QuarterHull(((2.0, 4.0), (4.0, 0.0)), Orientation.NABLA)
    up = compose_upper(gamma, nabla)
    assert up.apex == (2.0, 4.0)
    assert up.chain == ((0.0, 0.0), (2.0, 4.0), (4.0, 0.0))
    g2, n2 = split_chain(list(up.chain))
    assert (g2.vertices, n2.vertices) == (gamma.vertices, nabla.vertices)
    with pytest.raises(HullContractError):
        compose_upper(gamma, QuarterHull(((9.0, 9.0), (10.0, 1.0)), Orientation.NABLA))
    with pytest.raises(HullContractError):
        compose_upper(nabla, nabla)


@given(pts=grid_sets)
def test_split_chain_apex_rule(pts):
    chain = upper_chain(sorted(pts), EXACT)
    a = chain_apex_index(chain)
    ys = [p[1] for p in chain]
    assert ys[a] == max(ys)
    assert all(y < ys[a] for y in ys[:a]), "apex is the leftmost maximum"


def test_mirrors_are_involutions():
    pts = [(0.0, 1.0), (2.0, 3.0), (5.0, -1.0)]
    assert mirror_x(mirror_x(pts)) == pts
    assert mirror_y(mirror_y(pts)) == pts
    # mirror_x maps a falling chain onto a rising one.
    falling = [(0.0, 4.0), (1.0, 2.0), (3.0, 1.0)]
    QuarterHull(tuple(mirror_x(falling)), Orientation.GAMMA)


def test_full_hull_span_check():
    up = compose_upper(
        QuarterHull(((0.0, 0.0), (2.0, 4.0))),
        QuarterHull(((2.0, 4.0), (4.0, 0.0)), Orientation.NABLA),
    )
    lo = compose_upper(
        QuarterHull(((0.0, 0.0),)),
        QuarterHull(((0.0, 0.0), (4.0, 0.0)), Orientation.NABLA),
    )
    FullHull(upper=up, lower=lo)
    bad_lo = compose_upper(
        QuarterHull(((1.0, 0.0),)),
        QuarterHull(((1.0, 0.0), (4.0, 0.0)), Orientation.NABLA),
    )
    with pytest.raises(HullContractError):
        FullHull(upper=up, lower=bad_lo)


# --- kernel-parameterized equivalence on safe integer inputs ----------------


@given(pts=grid_sets)
def test_quadratic_equals_exact_on_integer_grid(pts):
    assert upper_chain(sorted(pts), KernelKind.QUADRATIC) == upper_chain(
        sorted(pts), EXACT
    )


# --- containment consistency with oracle ------------------------------------


@given(pts=grid_sets, q=grid_points)
def test_two_chain_containment_matches_oracle(pts, q):
    up = upper_chain(sorted(pts), EXACT)
    lo = upper_chain(sorted(mirror_y(pts)), EXACT)
    inside = not chain_strictly_above(up, q, EXACT) and not chain_strictly_above(
        lo, (q[0], -q[1]), EXACT
    )
    assert inside == oracle_contains(pts, q)
