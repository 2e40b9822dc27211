"""2-d weighted range counting and level-sampled range reporting over edge points.

Each graph edge becomes one point (min(po u, po v), max(po u, po v)) carrying
its weight, so subtree degrees and subtree-to-subtree crossings reduce to at
most two axis-aligned rectangle sums. The weight index is a static merge-sort
tree (O(m log m) build, O(log^2 m) per rectangle); the sampling index keeps
halving subsets S_0 .. S_k whose membership is fixed by the build seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import RootedSpanTree, WeightedGraph
from .requests import CrossNested, CrossSub, DegSubtree
from .util import ceil_log2, rng_for


@dataclass(frozen=True)
class EdgePoint:
    x: int
    y: int
    w: int
    edge_id: int


class EdgePointSet:
    """All edges of one (graph, tree) pair as strict upper-triangle points."""

    def __init__(self, g: WeightedGraph, t: RootedSpanTree):
        pu = t.po[g.eu]
        pv = t.po[g.ev]
        self.xs = np.minimum(pu, pv).astype(np.int64)
        self.ys = np.maximum(pu, pv).astype(np.int64)
        self.ws = g.ew.copy()
        self.ids = np.arange(g.m, dtype=np.int64)
        self.n = t.n
        assert (self.xs < self.ys).all(), "self-loops cannot appear as points"

    def __len__(self):
        return len(self.xs)

    def point(self, i) -> EdgePoint:
        return EdgePoint(int(self.xs[i]), int(self.ys[i]), int(self.ws[i]), int(self.ids[i]))


class WeightRangeIndex:
    """Merge-sort tree: exact weight sums over axis-aligned rectangles."""

    def __init__(self, xs, ys, ws):
        order = np.lexsort((ys, xs))
        self.xs = np.asarray(xs, dtype=np.int64)[order]
        m = len(self.xs)
        self.m = m
        self.depths = max(1, ceil_log2(m) + 1) if m else 1
        self._ys = []
        self._cum = []
        ys_sorted = np.asarray(ys, dtype=np.int64)[order]
        ws_sorted = np.asarray(ws, dtype=np.int64)[order]
        for d in range(self.depths):
            block = 1 << d
            pad = (-m) % block
            yy = np.concatenate([ys_sorted, np.full(pad, np.iinfo(np.int64).max)])
            wwpad = np.concatenate([ws_sorted, np.zeros(pad, dtype=np.int64)])
            yy = yy.reshape(-1, block)
            idx = np.argsort(yy, axis=1, kind="stable")
            yy = np.take_along_axis(yy, idx, axis=1)
            ww = np.take_along_axis(wwpad.reshape(-1, block), idx, axis=1)
            self._ys.append(yy.reshape(-1))
            self._cum.append(np.cumsum(ww.reshape(-1, block), axis=1).reshape(-1))
            if block >= m:
                self.depths = d + 1
                break
        self.total = int(ws_sorted.sum()) if m else 0

    def _blocks(self, lo, hi):
        """Canonical aligned blocks covering index range [lo, hi)."""
        out = []
        while lo < hi:
            d = (lo & -lo).bit_length() - 1 if lo else self.depths - 1
            d = min(d, self.depths - 1)
            while (1 << d) > hi - lo:
                d -= 1
            out.append((d, lo))
            lo += 1 << d
        return out

    def _block_weight(self, d, start, ylo, yhi):
        block = 1 << d
        base = (start >> d) << d  # start is block-aligned already
        ys = self._ys[d][base : base + block]
        cum = self._cum[d][base : base + block]
        a = int(np.searchsorted(ys, ylo, side="left"))
        b = int(np.searchsorted(ys, yhi, side="right"))
        if b <= a:
            return 0
        hi_sum = int(cum[b - 1])
        lo_sum = int(cum[a - 1]) if a else 0
        return hi_sum - lo_sum

    def rect_weight(self, x1, x2, y1, y2) -> int:
        if x1 > x2 or y1 > y2 or self.m == 0:
            return 0
        lo = int(np.searchsorted(self.xs, x1, side="left"))
        hi = int(np.searchsorted(self.xs, x2, side="right"))
        if hi <= lo:
            return 0
        return sum(self._block_weight(d, s, y1, y2) for d, s in self._blocks(lo, hi))


class _LevelPoints:
    """One sampling level: flat arrays, reporting by direct rectangle scan."""

    def __init__(self, xs, ys, ids):
        self.xs = xs
        self.ys = ys
        self.ids = ids

    def report(self, x1, x2, y1, y2):
        mask = (self.xs >= x1) & (self.xs <= x2) & (self.ys >= y1) & (self.ys <= y2)
        return self.ids[mask]


class SampleRangeIndex:
    """Halving level subsets with per-level reporting.

    Level membership is drawn once at build time: a point reaches level i
    with probability 2**-i (independent fair coins), so S_0 is everything and
    |S_i| halves in expectation. Reporting a rectangle at the first level
    (from the top) holding >= k of its points yields a size-k..O(k) subset in
    which every rectangle point is included with the same probability.
    """

    def __init__(self, xs, ys, ids, seed):
        m = len(xs)
        self.m = m
        self.top = ceil_log2(m) if m > 1 else 0
        rng = rng_for(seed, 0xA11CE)
        top_level = rng.geometric(0.5, size=m) - 1 if m else np.zeros(0, dtype=np.int64)
        self.point_level = np.minimum(top_level, self.top).astype(np.int64)
        self.xs = np.asarray(xs, dtype=np.int64)
        self.ys = np.asarray(ys, dtype=np.int64)
        self.ids = np.asarray(ids, dtype=np.int64)
        self.levels = []
        for i in range(self.top + 1):
            keep = self.point_level >= i
            self.levels.append(_LevelPoints(self.xs[keep], self.ys[keep], self.ids[keep]))

    def sample_rect(self, x1, x2, y1, y2, k):
        """All rectangle points of the shallowest level that reports >= k of them.

        One vectorized pass: the levels nest, so the stop level falls out of
        the level histogram of the rectangle's points.
        """
        if k < 1:
            raise ValueError("k must be >= 1")
        inside = (self.xs >= x1) & (self.xs <= x2) & (self.ys >= y1) & (self.ys <= y2)
        lv = self.point_level[inside]
        if len(lv) <= k:
            return self.ids[inside]
        per_level = np.bincount(lv, minlength=self.top + 1)
        counts_at = per_level[::-1].cumsum()[::-1]  # counts_at[i] = |rect & S_i|
        stop = 0
        for i in range(self.top, -1, -1):
            if counts_at[i] >= k:
                stop = i
                break
        return self.ids[inside][lv >= stop]


def build_indexes(g: WeightedGraph, t: RootedSpanTree, seed):
    """Point set plus weight and sampling indexes for one (graph, tree) pair."""
    pts = EdgePointSet(g, t)
    widx = WeightRangeIndex(pts.xs, pts.ys, pts.ws)
    sidx = SampleRangeIndex(pts.xs, pts.ys, pts.ids, seed)
    return pts, widx, sidx


def rect_weight(idx: WeightRangeIndex, rect) -> int:
    (x1, x2), (y1, y2) = rect
    if x1 > x2 or y1 > y2:
        raise ValueError(f"bad rectangle {rect}")
    return idx.rect_weight(x1, x2, y1, y2)


def subtree_rects(t: RootedSpanTree, q):
    """Rectangles whose weight sum answers a subtree cut request."""
    n = t.n
    if isinstance(q, DegSubtree):
        a, b = t.range_of(q.v)
        return [(0, a - 1, a, b), (a, b, b + 1, n - 1)]
    if isinstance(q, CrossSub):
        a, b = t.range_of(q.u)
        c, d = t.range_of(q.v)
        if a > c:
            (a, b), (c, d) = (c, d), (a, b)
        if b >= c:
            raise ValueError(f"subtree ranges overlap for {q}")
        return [(a, b, c, d)]
    if isinstance(q, CrossNested):
        a, b = t.range_of(q.u)
        c, d = t.range_of(q.v)
        if not (a <= c and d <= b):
            raise ValueError(f"{q} does not nest")
        return [(0, a - 1, c, d), (c, d, b + 1, n - 1)]
    raise TypeError(f"not a subtree query: {q!r}")


def subtree_queries(idx: WeightRangeIndex, t: RootedSpanTree, q) -> int:
    """Answer DegSubtree / CrossSub / CrossNested with at most two rectangles."""
    return sum(idx.rect_weight(x1, x2, y1, y2) for x1, x2, y1, y2 in subtree_rects(t, q))


def sample_rect(idx: SampleRangeIndex, rect, k, rng=None):
    """Distinct random points of the rectangle; all of them if it holds <= k.

    The output is fixed by the index's build seed (the generator argument is
    accepted for call-site symmetry with the other samplers but the level
    walk itself is deterministic).
    """
    (x1, x2), (y1, y2) = rect
    return idx.sample_rect(x1, x2, y1, y2, k)
