"""Range index: exact rectangle sums, subtree queries, level sampling."""

import numpy as np
import pytest

from twocut.rangeindex import (
    EdgePointSet,
    SampleRangeIndex,
    WeightRangeIndex,
    build_indexes,
    rect_weight,
    sample_rect,
    subtree_queries,
)
from twocut.requests import CrossNested, CrossSub, DegSubtree
from twocut.graph import cut_of_partition

from conftest import make_gstar, random_instance


def test_gstar_point_set():
    g, t = make_gstar()
    pts = EdgePointSet(g, t)
    got = {(int(x), int(y), int(w)) for x, y, w in zip(pts.xs, pts.ys, pts.ws)}
    assert got == {(1, 4, 1), (0, 1, 1), (3, 4, 1), (2, 3, 1), (0, 2, 4), (1, 3, 2)}


def test_gstar_rect_weights():
    g, t = make_gstar()
    _, widx, _ = build_indexes(g, t, seed=1)
    assert rect_weight(widx, ((0, 1), (2, 3))) == 6
    assert rect_weight(widx, ((0, 1), (2, 4))) == 7
    assert rect_weight(widx, ((0, 4), (0, 4))) == 10
    assert rect_weight(widx, ((3, 2), (0, 0)) if False else ((2, 2), (3, 3))) == 1
    assert widx.rect_weight(4, 4, 0, 0) == 0  # empty rectangle


def test_gstar_subtree_queries():
    g, t = make_gstar()
    _, widx, _ = build_indexes(g, t, seed=1)
    assert subtree_queries(widx, t, DegSubtree(1)) == 7
    assert subtree_queries(widx, t, CrossSub(1, 3)) == 6
    assert subtree_queries(widx, t, CrossNested(2, 1)) == 4


def test_rect_weight_matches_linear_scan():
    rng = np.random.default_rng(101)
    checked = 0
    while checked < 10_000:
        g, t = random_instance(rng, 4, 14)
        pts = EdgePointSet(g, t)
        widx = WeightRangeIndex(pts.xs, pts.ys, pts.ws)
        n = g.n
        for _ in range(200):
            x1, x2 = sorted(rng.integers(0, n, size=2))
            y1, y2 = sorted(rng.integers(0, n, size=2))
            mask = (pts.xs >= x1) & (pts.xs <= x2) & (pts.ys >= y1) & (pts.ys <= y2)
            assert widx.rect_weight(x1, x2, y1, y2) == int(pts.ws[mask].sum())
            checked += 1


def test_deg_subtree_equals_partition_cut():
    rng = np.random.default_rng(103)
    for _ in range(30):
        g, t = random_instance(rng, 2, 12)
        _, widx, _ = build_indexes(g, t, seed=5)
        for v in range(g.n):
            if v == t.root:
                continue
            assert subtree_queries(widx, t, DegSubtree(v)) == cut_of_partition(g, t.subtree(v))


def test_sample_rect_exhausts_small_rectangles():
    g, t = make_gstar()
    _, _, sidx = build_indexes(g, t, seed=9)
    rng = np.random.default_rng(0)
    got = sample_rect(sidx, ((0, 1), (2, 4)), k=8, rng=rng)
    assert sorted(int(i) for i in got) == sorted(
        i for i, (x, y) in enumerate(zip(EdgePointSet(g, t).xs, EdgePointSet(g, t).ys))
        if 0 <= x <= 1 and 2 <= y <= 4
    )
    one = sample_rect(sidx, ((0, 0), (2, 2)), k=1, rng=rng)
    assert len(one) == 1


def test_sample_rect_determinism_per_seed():
    rng = np.random.default_rng(11)
    g, t = random_instance(rng, 10, 14, extra=3.0)
    pts = EdgePointSet(g, t)
    a = SampleRangeIndex(pts.xs, pts.ys, pts.ids, seed=42)
    b = SampleRangeIndex(pts.xs, pts.ys, pts.ids, seed=42)
    c = SampleRangeIndex(pts.xs, pts.ys, pts.ids, seed=43)
    assert (a.point_level == b.point_level).all()
    ra = a.sample_rect(0, g.n - 1, 0, g.n - 1, 3)
    rb = b.sample_rect(0, g.n - 1, 0, g.n - 1, 3)
    assert sorted(ra) == sorted(rb)
    assert len(a.point_level) == len(c.point_level)


def test_sample_rect_size_band_quick():
    # 512 points, k=8: the result should live in [k, 16k] essentially always.
    m = 512
    xs = np.arange(m, dtype=np.int64)
    ys = xs + m
    ids = np.arange(m, dtype=np.int64)
    bad = 0
    for seed in range(500):
        sidx = SampleRangeIndex(xs, ys, ids, seed=seed)
        out = sidx.sample_rect(0, m, 0, 2 * m, 8)
        if not (8 <= len(out) <= 128):
            bad += 1
    assert bad == 0


def test_sample_rect_rejects_bad_k():
    g, t = make_gstar()
    _, _, sidx = build_indexes(g, t, seed=2)
    with pytest.raises(ValueError):
        sidx.sample_rect(0, 4, 0, 4, 0)
