"""The counted cut-query model.

A CutOracle hides the weighted graph behind a single operation: the total
weight crossing a vertex bipartition, one query per call. Everything else
is built from that: crossings between disjoint sets cost three queries,
recovering one edge leaving a set costs O(log n) by interval bisection, and
the search's requests cost one query each because the requesting side knows
its partition already.

Post-order subtree requests are answered through a per-tree prefix grid the
oracle keeps internally; that is a simulator speed path, every answer is
still metered as a query.
"""

from __future__ import annotations

import numpy as np

from .graph import WeightedGraph
from .grid import PoPrefixGrid
from .provider import CostProvider, request_plan
from .proxy import ResourceBudgetError, forests_per_class, proxy_edge_budget
from .util import DisjointSets


class CutOracle:
    """Hidden weighted graph; reachable only through counted cut values."""

    def __init__(self, g: WeightedGraph):
        self.n = g.n
        self._eu = g.eu
        self._ev = g.ev
        self._ew = g.ew
        self.query_count = 0
        self._grids = {}

    def cut(self, side) -> int:
        """One cut query. `side` is a boolean mask or vertex iterable."""
        mask = self._mask(side)
        if not mask.any() or mask.all():
            raise ValueError("side must be a proper nonempty subset")
        self.query_count += 1
        crossing = mask[self._eu] != mask[self._ev]
        return int(self._ew[crossing].sum())

    def _mask(self, side):
        if isinstance(side, np.ndarray) and side.dtype == bool:
            return side
        mask = np.zeros(self.n, dtype=bool)
        mask[list(side)] = True
        return mask

    # -- post-order fast path (still one count per answered cut) --

    def register_order(self, key, po):
        if key not in self._grids:
            self._grids[key] = PoPrefixGrid(self.n, po[self._eu], po[self._ev], self._ew)

    def cut_intervals(self, key, intervals) -> int:
        ivs = [iv for iv in intervals if iv[0] <= iv[1]]
        size = sum(b - a + 1 for a, b in ivs)
        if size == 0 or size >= self.n:
            raise ValueError("side must be a proper nonempty subset")
        self.query_count += 1
        return self._grids[key].cut_union(ivs)


def oracle_cross_weight(oracle: CutOracle, a, b) -> int:
    """Weight between two disjoint vertex sets via three cut queries."""
    ma = oracle._mask(a)
    mb = oracle._mask(b)
    if (ma & mb).any():
        raise ValueError("sets overlap")
    if not ma.any() or not mb.any():
        raise ValueError("sets must be nonempty")
    both = ma | mb
    ca = oracle.cut(ma)
    cb = oracle.cut(mb)
    cab = 0 if both.all() else oracle.cut(both)
    return (ca + cb - cab) // 2


def _residual_cross(oracle, peeled, ma, mb):
    return oracle_cross_weight(oracle, ma, mb) - peeled.cross(ma, mb)


class PeeledEdges:
    """Edges already carved out of the oracle's graph, for local subtraction."""

    def __init__(self):
        self.u = []
        self.v = []
        self.w = []
        self._cache = None

    def add(self, u, v, w):
        self.u.append(u)
        self.v.append(v)
        self.w.append(w)
        self._cache = None

    def _arrays(self):
        if self._cache is None:
            self._cache = (
                np.asarray(self.u, dtype=np.int64),
                np.asarray(self.v, dtype=np.int64),
                np.asarray(self.w, dtype=np.int64),
            )
        return self._cache

    def cut(self, mask) -> int:
        if not self.u:
            return 0
        u, v, w = self._arrays()
        return int(w[mask[u] != mask[v]].sum())

    def cross(self, ma, mb) -> int:
        if not self.u:
            return 0
        u, v, w = self._arrays()
        hit = (ma[u] & mb[v]) | (ma[v] & mb[u])
        return int(w[hit].sum())


def recover_crossing_edge(oracle: CutOracle, side, rng=None, mode="any", peeled=None):
    """One edge leaving `side`, or None, in at most 6 ceil(log2 n) queries.

    Bisects a fixed vertex ordering of the outside to pin the far endpoint,
    then bisects inside to pin the near one. mode "any" follows nonzero
    halves; mode "uniform" picks halves with probability proportional to
    their crossing weight, which makes the returned edge weighted-uniform
    among all crossing edges. Known peeled edges are subtracted locally, so
    the recovery works on the residual graph.
    """
    if peeled is None:
        peeled = PeeledEdges()
    mask = oracle._mask(side)
    n = oracle.n
    total = oracle.cut(mask) - peeled.cut(mask)
    if total == 0:
        return None

    def pick(cand, against, weight_total):
        """Bisect cand (vertex list) against the fixed mask `against`."""
        current = weight_total
        while len(cand) > 1:
            half = cand[: len(cand) // 2]
            mh = np.zeros(n, dtype=bool)
            mh[half] = True
            c1 = _residual_cross(oracle, peeled, against, mh)
            if mode == "uniform":
                take_first = rng.random() < (c1 / current if current else 0.0)
            else:
                take_first = c1 > 0
            if take_first:
                cand = half
                current = c1
            else:
                cand = cand[len(cand) // 2 :]
                current = current - c1
        return cand[0], current

    outside = [v for v in range(n) if not mask[v]]
    far, far_weight = pick(outside, mask, total)
    far_mask = np.zeros(n, dtype=bool)
    far_mask[far] = True
    inside = [v for v in range(n) if mask[v]]
    near, weight = pick(inside, far_mask, far_weight)
    return near, far, weight


def build_proxy_via_oracle(oracle: CutOracle, eps, rng, c4=1.0, c3=4.0) -> WeightedGraph:
    """Forest peeling against the oracle: recover a spanning forest of the
    residual graph, subtract it, repeat until exhaustion or the forest cap.

    A class-restricted peel is not observable through whole-graph cut
    queries, so the forests are peeled from the full residual graph; at the
    scales the budgets are asserted on, peeling exhausts the graph and the
    proxy is exact.
    """
    n = oracle.n
    budget = proxy_edge_budget(n, eps, c3)
    cap = 40 * forests_per_class(n, eps, c4)
    peeled = PeeledEdges()
    kept = []
    for _ in range(cap):
        ds = DisjointSets(n)
        forest = []
        progress = True
        while ds.count > 1 and progress:
            progress = False
            groups = {}
            for v in range(n):
                groups.setdefault(ds.find(v), []).append(v)
            for r, members in groups.items():
                # skip components touched earlier in this sweep; they get a
                # fresh member list next sweep
                if ds.find(r) != r or ds.size[r] != len(members) or len(members) == n:
                    continue
                got = recover_crossing_edge(oracle, members, rng, "any", peeled)
                if got is None:
                    continue
                u, v, w = got
                if ds.union(u, v):
                    forest.append((u, v, w))
                    progress = True
        if not forest:
            break
        for u, v, w in forest:
            peeled.add(u, v, w)
            kept.append((u, v, w))
        if len(kept) > budget:
            raise ResourceBudgetError(f"oracle proxy exceeded {budget} edges")
    return WeightedGraph(n, kept, require_connected=True)


class QueryProvider(CostProvider):
    """Requests priced per the model: subtree cuts and pair cuts one query,
    subtree crossings three."""

    def __init__(self, oracle: CutOracle, proxy: WeightedGraph):
        super().__init__()
        self.oracle = oracle
        self._proxy = proxy
        self.stats.queries = oracle.query_count

    def proxy_graph(self):
        return self._proxy

    def _eval_unique(self, items):
        out = []
        for ctx, req in items:
            key = ctx.uid
            self.oracle.register_order(key, ctx.tree.po)
            plan = request_plan(ctx, req)
            if plan[0] == "cut":
                out.append(self.oracle.cut_intervals(key, plan[1]))
            else:
                _, ivs_a, ivs_b = plan
                ca = self.oracle.cut_intervals(key, ivs_a)
                cb = self.oracle.cut_intervals(key, ivs_b)
                union = _disjoint_union_or_none(ivs_a, ivs_b, ctx.n)
                cab = 0 if union is None else self.oracle.cut_intervals(key, union)
                out.append((ca + cb - cab) // 2)
        self.stats.queries = self.oracle.query_count
        return out


def _disjoint_union_or_none(ivs_a, ivs_b, n):
    """Interval union of two disjoint sets; None when it covers everything."""
    ivs = [iv for iv in list(ivs_a) + list(ivs_b) if iv[0] <= iv[1]]
    ivs.sort()
    merged = []
    for a, b in ivs:
        if merged and a <= merged[-1][1] + 1:
            merged[-1] = (merged[-1][0], max(merged[-1][1], b))
        else:
            merged.append((a, b))
    if len(merged) == 1 and merged[0] == (0, n - 1):
        return None
    return merged


def query_provider(oracle: CutOracle, eps=0.1, rng=None, c4=1.0, c3=4.0) -> QueryProvider:
    """Provider over the oracle, with its sparsifier built the same way."""
    proxy = build_proxy_via_oracle(oracle, eps, rng, c4, c3)
    return QueryProvider(oracle, proxy)
