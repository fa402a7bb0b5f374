"""The three single-hull stores must be observationally identical.

Fed the same point sequence, vector, AVL, and B-tree stores must report
bit-identical hull cycles (equal to the rational oracle's), identical
per-insert outcomes, and matching query answers; they may differ only in
cost and in their modeled memory footprint.
"""

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from inchull.oracles import oracle_contains, oracle_hull_cycle
from inchull.predicates import KernelKind
from inchull.stores import (
    AVL_NODE_BYTES,
    POINT_BYTES,
    STORE_OVERHEAD_BYTES,
    AvlStore,
    BtreeStore,
    VectorStore,
)

EXACT = KernelKind.EXACT

coord = st.one_of(
    st.integers(min_value=-8, max_value=8).map(float),
    st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, width=64),
)
point = st.tuples(coord, coord)
points = st.lists(point, min_size=1, max_size=48)


def all_stores(node_bytes=1024):
    return [
        VectorStore(EXACT),
        AvlStore(EXACT),
        BtreeStore(EXACT, node_bytes=node_bytes),
        BtreeStore(EXACT, node_bytes=64),
    ]


@given(points)
@settings(max_examples=120)
def test_stores_agree_with_oracle_and_each_other(pts):
    stores = all_stores()
    for p in pts:
        outcomes = [s.insert(p) for s in stores]
        assert all(o == outcomes[0] for o in outcomes)
    want = oracle_hull_cycle(pts)
    for s in stores:
        assert s.vertices() == want
        assert s.hull_size() == len(want)


@given(points)
@settings(max_examples=60)
def test_reinsertion_is_a_no_op(pts):
    stores = all_stores()
    for s in stores:
        for p in pts:
            s.insert(p)
    before = [s.vertices() for s in stores]
    for s, want in zip(stores, before):
        for p in pts:
            assert s.insert(p) == ((False, 0, 0), (False, 0, 0))
        assert s.vertices() == want


@given(points, point)
def test_store_queries_delegate_correctly(pts, q):
    s = AvlStore(EXACT)
    for p in pts:
        s.insert(p)
    assert s.contains(q) == oracle_contains(pts, q)
    v = s.extreme_point((2.0, 3.0))
    assert v in oracle_hull_cycle(pts)


def test_adversarial_orders_keep_trees_valid():
    rng = random.Random(7)
    base = [(float(i), float((i * 37) % 101)) for i in range(200)]
    for order in (sorted(base), sorted(base, reverse=True), rng.sample(base, len(base))):
        stores = all_stores(node_bytes=64)
        for p in order:
            for s in stores:
                s.insert(p)
        vec, avl, bt, bt64 = stores
        avl._up.validate()
        avl._lo.validate()
        bt._up.validate()
        bt._lo.validate()
        bt64._up.validate()
        bt64._lo.validate()
        want = vec.vertices()
        assert avl.vertices() == want
        assert bt.vertices() == want
        assert bt64.vertices() == want


def test_memory_model_frozen_triangle():
    pts = [(0.0, 0.0), (2.0, 2.0), (4.0, 0.0)]
    vec, avl, bt, _ = all_stores()
    for p in pts:
        for s in (vec, avl, bt):
            s.insert(p)
    # upper chain has 3 vertices, mirrored lower has 2
    assert vec.memory_bytes() == STORE_OVERHEAD_BYTES + POINT_BYTES * 5
    assert avl.memory_bytes() == STORE_OVERHEAD_BYTES + AVL_NODE_BYTES * 5
    assert bt.memory_bytes() == STORE_OVERHEAD_BYTES + 1024 * 2  # one leaf per chain
    for s in (vec, avl, bt):
        assert s.peak_bytes() >= s.memory_bytes()


def test_peak_memory_survives_hull_shrink():
    vec = VectorStore(EXACT)
    for i in range(64):
        vec.insert((float(i), -((i - 32.0) ** 2)))  # concave: all upper vertices
    grown = vec.memory_bytes()
    vec.insert((32.0, 1e9))  # pops most of the upper chain
    assert vec.memory_bytes() < grown
    assert vec.peak_bytes() >= grown


def test_memory_ordering_on_a_large_parabola():
    vec, avl, bt, _ = all_stores()
    pts = [(float(i), -((i - 500.0) ** 2)) for i in range(1000)]
    for p in pts:
        for s in (vec, avl, bt):
            s.insert(p)
    assert vec.memory_bytes() < bt.memory_bytes() < avl.memory_bytes()
    assert avl.memory_bytes() / vec.memory_bytes() >= 2.0
