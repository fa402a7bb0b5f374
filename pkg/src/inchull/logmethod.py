"""Bucketed hull structures: amortize rebuilds over power-of-two levels.

A :class:`LogStructure` front-ends one of the plain stores with a stack of
frozen buckets.  Points land in a small mutable *base*; when the base fills
up it is merged -- together with a run of occupied buckets -- into a single
frozen bucket whose hull is rebuilt once, by sort-free k-way merging of the
participants' already-sorted hull chains.  Inserts therefore cost an
amortized O(log n) chain rebuild instead of the plain stores' per-insert
splice, at the price of queries now having to consult every nonempty part.

Two bucketing disciplines are provided:

* **count buckets** (variants ``linear`` and ``btree``): level i is either
  empty or accounts for exactly 2^i insertions (its ``virtual_size``); only
  the hull vertices are physically kept.  The base counts raw assignments
  and merges on reaching capacity.
* **hull buckets** (variant ``hull``): level i holds a hull with vertex
  count in [2^i, 2^{i+1}).  A point already enclosed by some part is
  discarded on arrival (it can never become a hull vertex); the base merges
  when its own hull reaches capacity, cascading upward while the target
  level is occupied.

Decomposable queries (extreme point, tangents, line-hits) combine per-part
answers through a small candidate hull.  Containment follows the two-case
scheme: report inside if any single part encloses the point, otherwise test
the point against supporting edges assembled from per-part neighbor
candidates -- both the pairwise-edges route and the candidate-hull route
are implemented and must agree.  Line intersection collects per-part
boundary crossings, certifies the extreme ones as combined-hull edges by
supporting-line tests, and falls back to building the exact combined chains
when certification cannot settle the answer (the fallback also covers the
bridge edges between parts, which no single part can report).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .hull_core import HullContractError, chain_strictly_above, require_finite, upper_chain
from .predicates import DegenerateInputError, KernelKind, Line, Point, _line_side
from .queries import (
    _attach_pair,
    _chain_crossings,
    _chain_peak_direction,
    _chain_peak_line,
    _exact_offset,
    _line_coeffs,
    _line_intersect_exact,
    _norm_line,
    _proj,
    extreme_point as chain_extreme_point,
    line_intersect as chain_line_intersect,
    tangents_from_point as chain_tangents,
)
from .stores import (
    POINT_BYTES,
    VECTOR_HEADER_BYTES,
    AvlStore,
    BtreeStore,
    InsertOutcome,
    VectorStore,
    _StoreCommon,
)

_NO_CHANGE: InsertOutcome = ((False, 0, 0), (False, 0, 0))

VARIANTS = ("linear", "btree", "hull")


def k_way_merge(runs: Sequence[Sequence[Point]]) -> list[Point]:
    """Merge sorted point runs into one sorted list via a binary min-heap
    of run cursors; ties drain from the lowest-index run first."""
    return list(heapq.merge(*runs))


@dataclass
class Bucket:
    """One frozen level: its sorted (pruned) points, both hull chains, and
    the number of insertions it accounts for (count-bucket scheme only)."""

    index: int
    points: list[Point]
    upper: list[Point]
    lower_m: list[Point]
    virtual_size: int = 0


def _dedup_sorted_union(upper: list[Point], lower_m: list[Point]) -> list[Point]:
    """x-sorted union of a hull's vertex chains (lower chain unmirrored)."""
    lower = [(p[0], -p[1]) for p in lower_m]
    lower.sort()
    out: list[Point] = []
    for p in heapq.merge(upper, lower):
        if not out or out[-1] != p:
            out.append(p)
    return out


class LogStructure(_StoreCommon):
    """Insertion-only hull over a mutable base plus frozen buckets."""

    name = "log"

    def __init__(
        self,
        variant: str = "linear",
        kernel: KernelKind = KernelKind.EXACT,
        base_capacity: int = 512,
        node_bytes: int = 1024,
    ) -> None:
        if variant not in VARIANTS:
            raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
        if base_capacity < 2 or base_capacity & (base_capacity - 1):
            raise ValueError(f"base_capacity must be a power of two >= 2, got {base_capacity}")
        self.variant = variant
        self.kernel = kernel
        self.base_capacity = base_capacity
        self.node_bytes = node_bytes
        self.buckets: dict[int, Bucket] = {}
        self.merges_fired = 0
        self.total_inserted = 0
        self.escalations = 0
        self._assigned = 0
        self._peak = 0
        self._fresh_base()
        self._note_memory()

    # -- construction helpers --------------------------------------------------

    def _fresh_base(self) -> None:
        if self.variant == "btree":
            self.base = BtreeStore(self.kernel, node_bytes=self.node_bytes)
        else:
            self.base = VectorStore(self.kernel)
        self._assigned = 0

    @property
    def base_level(self) -> int:
        """The base plays level l where capacity = 2^(l+1)."""
        return self.base_capacity.bit_length() - 2

    # -- insertion ---------------------------------------------------------------

    def insert(self, p: Point) -> InsertOutcome:
        require_finite(p)
        self.total_inserted += 1
        if self.variant == "hull":
            if len(self._parts()) > 0 and self.contains(p):
                return _NO_CHANGE  # enclosure witnessed: never a hull vertex
            out = self.base.insert(p)
            if self.base.hull_size() >= self.base_capacity:
                self._merge_hull_scheme()
            self._note_memory()
            return out
        out = self.base.insert(p)
        self._assigned += 1
        if self._assigned == self.base_capacity:
            self._merge_count_scheme()
        self._note_memory()
        return out

    def _merge_count_scheme(self) -> None:
        """Drain the base and the dense run of occupied levels above it into
        the first empty level j; sizes telescope to exactly 2^j."""
        self.merges_fired += 1
        j = self.base_level + 1
        folded: list[Bucket] = []
        while j in self.buckets:
            folded.append(self.buckets.pop(j))
            j += 1
        up_runs = [self.base.upper_vertices()] + [b.upper for b in folded]
        lo_runs = [list(self.base.chains[1])] + [b.lower_m for b in folded]
        new_up = upper_chain(k_way_merge(up_runs), self.kernel)
        new_lo = upper_chain(k_way_merge(lo_runs), self.kernel)
        self.buckets[j] = Bucket(
            index=j,
            points=_dedup_sorted_union(new_up, new_lo),
            upper=new_up,
            lower_m=new_lo,
            virtual_size=1 << j,
        )
        self._fresh_base()

    def _merge_hull_scheme(self) -> None:
        """Fold the base hull into a bucket at the level its size dictates,
        repeatedly absorbing any bucket already occupying the target level."""
        self.merges_fired += 1
        new_up = self.base.upper_vertices()
        new_lo = list(self.base.chains[1])
        size = self.base.hull_size()
        k = size.bit_length() - 1
        while k in self.buckets:
            b = self.buckets.pop(k)
            new_up = upper_chain(k_way_merge([new_up, b.upper]), self.kernel)
            new_lo = upper_chain(k_way_merge([new_lo, b.lower_m]), self.kernel)
            size = _hull_size_of(new_up, new_lo)
            k = size.bit_length() - 1
        self.buckets[k] = Bucket(
            index=k,
            points=_dedup_sorted_union(new_up, new_lo),
            upper=new_up,
            lower_m=new_lo,
        )
        self._fresh_base()

    # -- part plumbing -----------------------------------------------------------

    def _parts(self) -> list[tuple[Sequence[Point], Sequence[Point]]]:
        """(upper, mirrored-lower) chain views of every nonempty part."""
        parts: list[tuple[Sequence[Point], Sequence[Point]]] = []
        if self.base.hull_size() > 0:
            parts.append(self.base.chains)
        for level in sorted(self.buckets):
            b = self.buckets[level]
            parts.append((b.upper, b.lower_m))
        return parts

    def occupied_levels(self) -> dict[int, int]:
        """level -> virtual_size for every nonempty bucket."""
        return {i: b.virtual_size for i, b in sorted(self.buckets.items())}

    def base_count(self) -> int:
        """Insertions currently accounted to the base (count scheme)."""
        return self._assigned

    def _combined_chains(self) -> tuple[list[Point], list[Point]]:
        """Exact combined hull chains, built on demand from all parts."""
        parts = self._parts()
        if not parts:
            return [], []
        up = upper_chain(k_way_merge([list(u) for u, _ in parts]), self.kernel)
        lo = upper_chain(k_way_merge([list(m) for _, m in parts]), self.kernel)
        return up, lo

    # -- hull reporting (overrides the single-store chain views) -----------------

    def vertices(self) -> list[Point]:
        up, lo = self._combined_chains()
        holder = VectorStore(self.kernel)
        holder._up, holder._lo = up, lo
        return holder.vertices() if up else []

    def hull_size(self) -> int:
        up, lo = self._combined_chains()
        return _hull_size_of(up, lo)

    def upper_vertices(self) -> list[Point]:
        return self._combined_chains()[0]

    def lower_vertices(self) -> list[Point]:
        return [(p[0], -p[1]) for p in self._combined_chains()[1]]

    # -- memory -------------------------------------------------------------------

    def memory_bytes(self) -> int:
        total = self.base.memory_bytes()
        for b in self.buckets.values():
            n_pts = len(b.points) + len(b.upper) + len(b.lower_m)
            total += 3 * VECTOR_HEADER_BYTES + POINT_BYTES * n_pts
        return total

    # -- decomposable queries -------------------------------------------------------

    def _require_parts(self) -> list[tuple[Sequence[Point], Sequence[Point]]]:
        parts = self._parts()
        if not parts:
            raise HullContractError("query on an empty structure")
        return parts

    def extreme_point(self, d: tuple[float, float]) -> Point:
        parts = self._require_parts()
        if len(parts) == 1:
            return chain_extreme_point(parts[0][0], parts[0][1], d, self.kernel)
        cands = [chain_extreme_point(u, m, d, self.kernel) for u, m in parts]
        return self._candidate_extreme(cands, d)

    def _candidate_extreme(self, cands: list[Point], d: tuple[float, float]) -> Point:
        dx, dy = d
        if dy == 0.0:
            if dx == 0.0:
                raise DegenerateInputError("extreme direction must be nonzero")
            return max(cands) if dx > 0.0 else min(cands)
        if dy < 0.0:
            flipped = self._candidate_extreme([(x, -y) for x, y in cands], (dx, -dy))
            return (flipped[0], -flipped[1])
        mini = upper_chain(sorted(cands), self.kernel)
        return _chain_peak_direction(mini, dx, dy, self.kernel)

    def line_hits_hull(self, l: Line) -> bool:
        parts = self._require_parts()
        l = _norm_line(l)
        (px, py), (qx, qy) = l
        if px == qx:
            xmin = min(u[0][0] for u, _ in parts)
            xmax = max(u[len(u) - 1][0] for u, _ in parts)
            return xmin <= px <= xmax
        top = self._combined_peak_side(l, [u for u, _ in parts])
        lm = _norm_line(((px, -py), (qx, -qy)))
        bottom = self._combined_peak_side(lm, [m for _, m in parts])
        return top >= 0 and bottom >= 0

    def _combined_peak_side(self, l: Line, chains: list[Sequence[Point]]) -> int:
        """Sign of the highest signed offset from l over the union: the
        maximum over per-part peaks (a tournament, not a rebuild)."""
        best = -1
        for c in chains:
            v = c[_chain_peak_line(c, l, self.kernel)]
            s = _line_side(l, v, self.kernel)
            if s > best:
                best = s
                if best > 0:
                    break
        return best

    def tangents_from_point(self, q: Point) -> tuple[Point, Point]:
        parts = self._require_parts()
        if len(parts) == 1:
            return chain_tangents(parts[0][0], parts[0][1], q, self.kernel)
        cands: list[Point] = []
        for u, m in parts:
            t1, t2 = chain_tangents(u, m, q, self.kernel)  # raises if q inside a part
            cands.append(t1)
            cands.append(t2)
        mini_up = upper_chain(sorted(set(cands)), self.kernel)
        mini_lo = upper_chain(sorted((x, -y) for x, y in set(cands)), self.kernel)
        return chain_tangents(mini_up, mini_lo, q, self.kernel)

    # -- containment (two routes) ----------------------------------------------------

    def contains(self, q: Point, method: str = "union_hull") -> bool:
        """Two-case combined containment.

        Case 1: some single part encloses q.  Case 2: q is tested against
        supporting edges built from per-part insertion neighbors, either by
        scanning candidate pairs (``method="edge_pairs"``) or by hulling the
        candidates first (``method="union_hull"``, the default).  The two
        routes are equivalent and tested as such.
        """
        if method not in ("union_hull", "edge_pairs"):
            raise ValueError(f"unknown containment method {method!r}")
        parts = self._parts()
        if not parts:
            return False
        require_finite(q)
        kernel = self.kernel
        qm = (q[0], -q[1])
        under_upper = False
        over_lower = False
        up_parts: list[Sequence[Point]] = []
        lo_parts: list[Sequence[Point]] = []
        for u, m in parts:
            a = chain_strictly_above(u, q, kernel)
            b = chain_strictly_above(m, qm, kernel)
            if not a and not b:
                return True  # case 1: this part encloses q
            under_upper = under_upper or not a
            over_lower = over_lower or not b
            up_parts.append(u)
            lo_parts.append(m)
        if not under_upper:
            under_upper = self._covered_by_candidates(up_parts, q, method)
        if not over_lower:
            over_lower = self._covered_by_candidates(lo_parts, qm, method)
        return under_upper and over_lower

    def _covered_by_candidates(
        self, chains: list[Sequence[Point]], q: Point, method: str
    ) -> bool:
        """Is q on or under some supporting segment of the combined upper
        chain?  Candidate endpoints are each part's would-be insertion
        neighbors (or its end vertex when q is beyond the part's span)."""
        kernel = self.kernel
        lefts: list[Point] = []
        rights: list[Point] = []
        for c in chains:
            left, right = _attach_pair(c, q, kernel)
            lefts.append(c[0] if left is None else left)
            rights.append(c[len(c) - 1] if right is None else right)
        if method == "union_hull":
            mini = upper_chain(sorted(set(lefts + rights)), kernel)
            return not chain_strictly_above(mini, q, kernel)
        for u in lefts + rights:  # vertex cover (x-tied support)
            if u[0] == q[0] and q[1] <= u[1]:
                return True
        for u in lefts:
            for v in rights:
                if u[0] <= q[0] <= v[0] and u[0] < v[0]:
                    if not chain_strictly_above(
                        (u, v) if u <= v else (v, u), q, kernel
                    ):
                        return True
        return False

    # -- line intersection -------------------------------------------------------------

    def line_intersect(self, l: Line) -> Optional[tuple[Point, Point]]:
        parts = self._require_parts()
        if len(parts) == 1:
            return chain_line_intersect(parts[0][0], parts[0][1], l, self.kernel)
        norm = _norm_line(l)
        exact = self._line_intersect_multi(parts, norm)
        if exact is None:
            return None
        a, b = exact
        if norm[0] != l[0]:
            a, b = b, a
        return (float(a[0]), float(a[1])), (float(b[0]), float(b[1]))

    def _line_intersect_multi(self, parts, l):
        kernel = self.kernel
        (px, py), (qx, qy) = l
        if px == qx:
            xmin = min(u[0][0] for u, _ in parts)
            xmax = max(u[len(u) - 1][0] for u, _ in parts)
            if not (xmin <= px <= xmax):
                return None
            return self._escalate(l)
        lm = _norm_line(((px, -py), (qx, -qy)))
        top = self._combined_peak_side(l, [u for u, _ in parts])
        bottom = self._combined_peak_side(lm, [m for _, m in parts])
        if top < 0 or bottom < 0:
            return None  # the whole union is strictly one side of l
        # Collect per-part boundary crossings; certified ones lie on the
        # combined boundary and are therefore the intersection endpoints.
        certified: list[tuple[Fraction, Fraction]] = []
        for u, m in parts:
            for pt, host in _chain_crossings(u, l, kernel):
                if host[0] == "e" and self._supports_union(u[host[1]], u[host[1] + 1]):
                    certified.append(pt)
            for (cx, cy), host in _chain_crossings(m, lm, kernel):
                if host[0] == "e" and self._supports_union(
                    m[host[1]], m[host[1] + 1], mirrored=True
                ):
                    certified.append((cx, -cy))
        certified.extend(self._end_edge_crossings(parts, l))
        uniq = sorted(set(certified), key=lambda p: _proj(l, p))
        if len(uniq) >= 2:
            return uniq[0], uniq[-1]
        return self._escalate(l)

    def _supports_union(self, a: Point, b: Point, mirrored: bool = False) -> bool:
        """True iff no stored point lies strictly above line(a, b) -- i.e.
        the segment is an edge of the combined (possibly mirrored) chain."""
        kernel = self.kernel
        e = _norm_line((a, b))
        for u, m in self._parts():
            c = m if mirrored else u
            v = c[_chain_peak_line(c, e, kernel)]
            if _line_side(e, v, kernel) > 0:
                return False
        return True

    def _end_edge_crossings(self, parts, l):
        """Crossings of l with the combined hull's vertical end edges,
        derived from exact coordinate extremes over the parts."""
        lo_of = lambda m, k: (m[k][0], -m[k][1])
        # Combined chain ends: leftmost x keeps the highest y on the upper
        # chain and the lowest on the lower (mirrored for the right ends).
        left_u = min((u[0] for u, _ in parts), key=lambda p: (p[0], -p[1]))
        left_l = min(lo_of(m, 0) for _, m in parts)
        right_u = max(u[len(u) - 1] for u, _ in parts)
        right_l = max(
            (lo_of(m, len(m) - 1) for _, m in parts), key=lambda p: (p[0], -p[1])
        )
        out = []
        for uv, lv in ((left_u, left_l), (right_u, right_l)):
            if uv[0] != lv[0] or uv[1] == lv[1]:
                continue
            su = _exact_offset(l, uv)
            sl = _exact_offset(l, lv)
            if (su > 0 and sl < 0) or (su < 0 and sl > 0):
                a_, b_, c_ = _line_coeffs(l)
                x0 = Fraction(uv[0])
                out.append((x0, (c_ - a_ * x0) / b_))
        return out

    def _escalate(self, l: Line):
        """Exact fallback: build the true combined chains and intersect."""
        self.escalations += 1
        up, lo = self._combined_chains()
        return _line_intersect_exact(up, lo, l, self.kernel)


def _hull_size_of(upper: Sequence[Point], lower_m: Sequence[Point]) -> int:
    nu, nl = len(upper), len(lower_m)
    if nu == 0:
        return 0
    shared = int(upper[0][0] == lower_m[0][0] and upper[0][1] == -lower_m[0][1])
    shared += int(
        upper[nu - 1][0] == lower_m[nl - 1][0] and upper[nu - 1][1] == -lower_m[nl - 1][1]
    )
    return max(nu + nl - shared, 1)


# ---------------------------------------------------------------------------
# Module-level aliases for the combined queries
# ---------------------------------------------------------------------------


def contains_combined(s: LogStructure, q: Point, method: str = "union_hull") -> bool:
    return s.contains(q, method=method)


def line_intersect_combined(s: LogStructure, l: Line) -> Optional[tuple[Point, Point]]:
    return s.line_intersect(l)


# ---------------------------------------------------------------------------
# Factory
# ---------------------------------------------------------------------------

STRUCTURE_NAMES = ("vector", "avl", "btree", "log-linear", "log-btree", "log-hull")


def make_structure(
    name: str,
    kernel: KernelKind = KernelKind.EXACT,
    base_capacity: int = 512,
    node_bytes: int = 1024,
):
    """Build any of the six hull structures by its benchmark name."""
    if name == "vector":
        return VectorStore(kernel)
    if name == "avl":
        return AvlStore(kernel)
    if name == "btree":
        return BtreeStore(kernel, node_bytes=node_bytes)
    if name.startswith("log-"):
        variant = name[4:]
        if variant in VARIANTS:
            return LogStructure(
                variant, kernel, base_capacity=base_capacity, node_bytes=node_bytes
            )
    raise ValueError(f"unknown structure {name!r}; expected one of {STRUCTURE_NAMES}")
