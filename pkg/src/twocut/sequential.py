"""In-memory cost provider backed by the 2-d range indexes.

Each spanning tree gets its own edge-point set and weight index (post-order
changes with the tree); subtree degrees are cached per tree since Step 1
computes them all anyway and the later steps keep re-reading them.
"""

from __future__ import annotations

from .graph import SINGLE, ORTHOGONAL, WeightedGraph
from .provider import CostProvider, TreeContext
from .rangeindex import EdgePointSet, WeightRangeIndex
from .requests import CrossNested, CrossSub, DegSubtree, PairCut


class SequentialProvider(CostProvider):
    def __init__(self, g: WeightedGraph):
        super().__init__()
        self.g = g
        self._index = {}
        self._deg_local = {}

    def _widx(self, ctx: TreeContext) -> WeightRangeIndex:
        got = self._index.get(ctx.uid)
        if got is None:
            pts = EdgePointSet(self.g, ctx.tree)
            got = WeightRangeIndex(pts.xs, pts.ys, pts.ws)
            self._index[ctx.uid] = got
        return got

    def _deg(self, ctx, widx, v):
        key = (ctx.uid, v)
        got = self._deg_local.get(key)
        if got is None:
            a, b = ctx.subtree_interval(v)
            n = ctx.n
            got = widx.rect_weight(0, a - 1, a, b) + widx.rect_weight(a, b, b + 1, n - 1)
            self._deg_local[key] = got
        return got

    def _cross_sub(self, ctx, widx, u, v):
        (a, b), (c, d) = ctx.subtree_interval(u), ctx.subtree_interval(v)
        if a > c:
            (a, b), (c, d) = (c, d), (a, b)
        return widx.rect_weight(a, b, c, d)

    def _cross_nested(self, ctx, widx, v, u):
        a, b = ctx.subtree_interval(u)
        c, d = ctx.subtree_interval(v)
        n = ctx.n
        return widx.rect_weight(0, a - 1, c, d) + widx.rect_weight(c, d, b + 1, n - 1)

    def _eval_unique(self, items):
        out = []
        for ctx, req in items:
            widx = self._widx(ctx)
            if isinstance(req, DegSubtree):
                out.append(self._deg(ctx, widx, req.v))
            elif isinstance(req, CrossSub):
                out.append(self._cross_sub(ctx, widx, req.u, req.v))
            elif isinstance(req, CrossNested):
                out.append(self._cross_nested(ctx, widx, req.v, req.u))
            elif isinstance(req, PairCut):
                p = req.pair
                if p.kind == SINGLE:
                    out.append(self._deg(ctx, widx, p.a))
                elif p.kind == ORTHOGONAL:
                    out.append(
                        self._deg(ctx, widx, p.a)
                        + self._deg(ctx, widx, p.b)
                        - 2 * self._cross_sub(ctx, widx, p.a, p.b)
                    )
                else:
                    out.append(
                        self._deg(ctx, widx, p.a)
                        + self._deg(ctx, widx, p.b)
                        - 2 * self._cross_nested(ctx, widx, p.b, p.a)
                    )
            else:
                raise TypeError(f"unknown request {req!r}")
        return out
