"""The in-memory cost backend: rectangle sums and level sampling.

Edges become points on the post-order plane, so subtree degrees and
crossings are one or two rectangle sums. The sampling index keeps halving
subsets of the points; reporting a rectangle at the right level returns a
small uniform sample, which is what drives interesting-pair discovery.
"""

import numpy as np

from twocut.graph import WeightedGraph, build_rooted_tree, cut_of_partition
from twocut.rangeindex import build_indexes, rect_weight, sample_rect, subtree_queries
from twocut.requests import CrossSub, DegSubtree
from twocut.reservoir import reservoir_sample

EDGES = [(0, 1, 1), (1, 2, 1), (0, 3, 1), (3, 4, 1), (2, 4, 4), (1, 3, 2)]
g = WeightedGraph(5, EDGES)
t = build_rooted_tree(g, [(0, 1), (1, 2), (0, 3), (3, 4)], root=0)

pts, widx, sidx = build_indexes(g, t, seed=5)
print("edge points:", sorted(zip(pts.xs.tolist(), pts.ys.tolist(), pts.ws.tolist())))
print("rect [0,1]x[2,3]:", rect_weight(widx, ((0, 1), (2, 3))))
print("deg(subtree of 1):", subtree_queries(widx, t, DegSubtree(1)),
      "== cut:", cut_of_partition(g, t.subtree(1)))
print("crossing of subtrees 1,3:", subtree_queries(widx, t, CrossSub(1, 3)))

m = 400
xs = np.arange(m)
ys = xs + m
ids = np.arange(m)
from twocut.rangeindex import SampleRangeIndex

hits = np.zeros(m)
trials = 3000
for s in range(trials):
    idx = SampleRangeIndex(xs, ys, ids, seed=s)
    got = sample_rect(idx, ((0, m), (0, 2 * m)), k=16, rng=None)
    hits[np.asarray(got)] += 1
print(f"\nlevel sampling over {m} points, k=16, {trials} rebuilds: "
      f"per-point inclusion {hits.mean() / trials:.3f} +- {hits.std() / trials:.3f}")

rng = np.random.default_rng(0)
kept = reservoir_sample(range(100), 5, rng)
print("reservoir of 5 from a 100-item stream:", kept)
