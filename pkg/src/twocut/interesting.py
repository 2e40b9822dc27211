"""Discovery of cross- and down-interesting tree-edge pairs.

For a tree edge e above vertex u, a partner edge above v is cross-interesting
when C(u_sub, v_sub) > deg(u_sub) / 2 (disjoint subtrees) and
down-interesting when C(v_sub, V - u_sub) > deg(u_sub) / 2 (v below u). Only
such pairs can beat every single-edge tree cut. Partners of one edge all lie
on a single root-to-leaf line and are closed upward along it, so it is
enough to sample edges on u's subtree boundary, walk each sampled endpoint's
line through the path decomposition, and check the met segments' top edges.

Sampling is stratified by weight class [2^i, 2^(i+1)): whenever some subtree
attracts more than half of u's boundary weight, at least one class gives its
edges a constant point-fraction, so a logarithmic sample hits it with high
probability. Pairs within one decomposition path are excluded here; the path
solver already covers them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graph import WeightedGraph
from .grid import grid_from_graph, subtree_degrees
from .hld import PathDecomposition
from .provider import TreeContext
from .rangeindex import SampleRangeIndex
from .requests import CrossNested, CrossSub, DegSubtree
from .util import ceil_log2

DEFAULT_SAMPLE_MULTIPLIER = 4

CROSS = "cross"
DOWN = "down"


class WeightClassIndex:
    """Per weight class: that class's edge points with a sampling index.

    Zero-weight edges are skipped; they cannot witness any threshold.
    """

    def __init__(self, g: WeightedGraph, t, seed):
        self.g = g
        self.n = t.n
        pu = t.po[g.eu]
        pv = t.po[g.ev]
        xs = np.minimum(pu, pv)
        ys = np.maximum(pu, pv)
        ids = np.arange(g.m)
        cls = np.asarray([w.bit_length() - 1 if w > 0 else -1 for w in map(int, g.ew)], dtype=np.int64)
        self.classes = {}
        for i in sorted(set(int(c) for c in cls if c >= 0)):
            keep = cls == i
            self.classes[i] = SampleRangeIndex(xs[keep], ys[keep], ids[keep], seed=(seed << 6) ^ i)

    @property
    def class_count(self):
        return len(self.classes)


def build_weight_classes(g: WeightedGraph, t, seed) -> WeightClassIndex:
    return WeightClassIndex(g, t, seed)


@dataclass
class CandidateBundle:
    """Sampled boundary edges of one subtree, bucketed by weight class."""

    by_class: dict = field(default_factory=dict)

    def all_edges(self):
        out = []
        seen = set()
        for ids in self.by_class.values():
            for eid in ids:
                if eid not in seen:
                    seen.add(eid)
                    out.append(eid)
        return out


def _boundary_rects(t, u):
    a, b = int(t.lo[u]), int(t.hi[u])
    n = t.n
    return ((0, a - 1, a, b), (a, b, b + 1, n - 1))


def _sample_boundary(wc: WeightClassIndex, t, u, k) -> CandidateBundle:
    bundle = CandidateBundle()
    for i, sidx in wc.classes.items():
        got = []
        for x1, x2, y1, y2 in _boundary_rects(t, u):
            if x1 <= x2 and y1 <= y2:
                got.extend(int(e) for e in sidx.sample_rect(x1, x2, y1, y2, k))
        if got:
            bundle.by_class[i] = sorted(set(got))
    return bundle


def sample_k(n, multiplier=DEFAULT_SAMPLE_MULTIPLIER):
    return max(1, multiplier * ceil_log2(max(n, 2)))


def sample_cross_candidates(wc: WeightClassIndex, t, u, rng, multiplier=DEFAULT_SAMPLE_MULTIPLIER):
    """Boundary sample aimed at partners v with big C(u_sub, v_sub)."""
    return _sample_boundary(wc, t, u, sample_k(wc.n, multiplier))


def sample_down_candidates(wc: WeightClassIndex, t, u, rng, multiplier=DEFAULT_SAMPLE_MULTIPLIER):
    """Boundary sample aimed at descendants v with big C(v_sub, V - u_sub);
    the witness edge leaves u's subtree from inside v's."""
    return _sample_boundary(wc, t, u, sample_k(wc.n, multiplier))


class ProxyFilter:
    """1/3-threshold interest checks evaluated locally on a sparsifier.

    A (1 +- eps) sparsifier turns the exact strict-half tests into strict
    third tests that never reject a true partner; survivors still get the
    exact check in the real graph.
    """

    def __init__(self, h: WeightedGraph, tree):
        self.tree = tree
        self.grid = grid_from_graph(h, tree.po)
        self.deg = subtree_degrees(self.grid, tree.lo, tree.hi)

    def cross_ok(self, u, f) -> bool:
        iu = (self.tree._lo[u], self.tree._hi[u])
        iv = (self.tree._lo[f], self.tree._hi[f])
        return 3 * self.grid.cross((iu,), (iv,)) > int(self.deg[u])

    def down_ok(self, u, f) -> bool:
        ivf = (self.tree._lo[f], self.tree._hi[f])
        lo, hi = self.tree._lo[u], self.tree._hi[u]
        comp = ((0, lo - 1), (hi + 1, self.grid.n - 1))
        return 3 * self.grid.cross((ivf,), comp) > int(self.deg[u])

    def cross_ok_many(self, u, fs):
        """Vectorized strict-third checks for many cross candidates of u."""
        t = self.tree
        fs = np.asarray(fs, dtype=np.int64)
        lo_f, hi_f = t.lo[fs], t.hi[fs]
        lo_u = np.full(len(fs), t._lo[u], dtype=np.int64)
        hi_u = np.full(len(fs), t._hi[u], dtype=np.int64)
        val = self.grid.blocks(lo_u, hi_u, lo_f, hi_f)
        return 3 * val > int(self.deg[u])

    def down_ok_many(self, u, fs):
        """Vectorized strict-third checks for many down candidates of u."""
        t = self.tree
        fs = np.asarray(fs, dtype=np.int64)
        lo_f, hi_f = t.lo[fs], t.hi[fs]
        n = self.grid.n
        left = self.grid.blocks(
            np.zeros(len(fs), dtype=np.int64),
            np.full(len(fs), t._lo[u] - 1, dtype=np.int64),
            lo_f,
            hi_f,
        )
        right = self.grid.blocks(
            lo_f,
            hi_f,
            np.full(len(fs), t._hi[u] + 1, dtype=np.int64),
            np.full(len(fs), n - 1, dtype=np.int64),
        )
        return 3 * (left + right) > int(self.deg[u])


def candidate_tops(d: PathDecomposition, e, cross_bundle, down_bundle, g: WeightedGraph):
    """Segment-top candidates implied by sampled boundary edges of e's subtree.

    Returns (cross, down) lists of (top_edge_child, path_id), deduplicated,
    geometry-filtered (orthogonal for cross, strictly below for down), with
    e's own path excluded.
    """
    t = d.tree
    u = e
    own = d._path_of[e]
    eids = np.asarray(cross_bundle.all_edges(), dtype=np.int64)
    if cross_bundle is not down_bundle:
        extra = np.asarray(down_bundle.all_edges(), dtype=np.int64)
        eids = np.unique(np.concatenate([eids, extra])) if len(extra) else eids
    if len(eids) == 0:
        return [], []
    pa, pb = t.po[g.eu[eids]], t.po[g.ev[eids]]
    a_in = (t._lo[u] <= pa) & (pa <= t._hi[u])
    ends_a, ends_b = g.eu[eids], g.ev[eids]
    inner = set(np.where(a_in, ends_a, ends_b).tolist())
    outer = set(np.where(a_in, ends_b, ends_a).tolist())
    # witnesses on one decomposition path contribute nested candidate sets,
    # so only the deepest witness per path matters
    outer = _deepest_per_path(d, outer)
    inner = _deepest_per_path(d, inner - {u})
    cross = {}
    for x in outer:
        # true partners sit strictly below the divergence point of u's and
        # x's root lines; everything there is orthogonal to u, and interest
        # is closed upward within the segment, so per met path its
        # segment-top edge decides
        da = d.cross_anchor_depth(u, x)
        for f, pid in d.suffix_tops_below_depth(x, da):
            if t.orthogonal(u, f):
                cross[(f, pid)] = True
    down = {}
    for x in inner:
        for f, pid in d.suffix_tops_below_depth(x, t._depth[u]):
            if pid != own:
                down[(f, pid)] = True
    return list(cross.keys()), list(down.keys())


def _deepest_per_path(d, vertices):
    t = d.tree
    best = {}
    for x in vertices:
        if x == t.root:
            continue
        pid = d._path_of[x]
        cur = best.get(pid)
        if cur is None or t._depth[x] > t._depth[cur]:
            best[pid] = x
    return list(best.values())


def verify_interest(provider, ctx: TreeContext, e, f, kind, mode="exact") -> bool:
    """Strict threshold check for one candidate pair.

    exact: 2 C > deg in the real graph, via the provider.
    proxy: 3 C > deg in the provider's sparsifier, locally (a superset
    filter; confirm survivors in exact mode before use).
    """
    t = ctx.tree
    if kind == CROSS:
        if not t.orthogonal(e, f):
            raise ValueError(f"cross pair ({e}, {f}) is not orthogonal")
    elif kind == DOWN:
        if not (t.is_ancestor(e, f) and e != f):
            raise ValueError(f"down pair needs {f} strictly below {e}")
    else:
        raise ValueError(f"unknown interest kind {kind}")
    if mode == "proxy":
        h = provider.proxy_graph()
        if h is None:
            raise ValueError("provider exposes no proxy graph")
        filt = ProxyFilter(h, t)
        return filt.cross_ok(e, f) if kind == CROSS else filt.down_ok(e, f)
    if mode != "exact":
        raise ValueError(f"unknown mode {mode}")
    req = CrossSub(e, f) if kind == CROSS else CrossNested(f, e)
    deg, val = provider.batch_eval([(ctx, DegSubtree(e)), (ctx, req)])
    return 2 * val > deg


def interesting_paths_for_edge(d: PathDecomposition, e, bundles, provider, ctx: TreeContext,
                               use_proxy=None):
    """Verified interesting decomposition paths for one tree edge.

    bundles is the (cross, down) pair from the two samplers. Verification is
    exact through the provider; when the provider carries a proxy graph the
    1/3 filter prunes candidates first (and use_proxy can force either
    behavior). Returns (cross path ids, down path ids).
    """
    cross_cands, down_cands = candidate_tops(d, e, bundles[0], bundles[1], provider_graph(provider, ctx))
    if use_proxy is None:
        use_proxy = provider.proxy_graph() is not None
    if use_proxy:
        filt = ProxyFilter(provider.proxy_graph(), ctx.tree)
        cross_cands = [(f, pid) for f, pid in cross_cands if filt.cross_ok(e, f)]
        down_cands = [(f, pid) for f, pid in down_cands if filt.down_ok(e, f)]
    reqs = [(ctx, DegSubtree(e))]
    reqs += [(ctx, CrossSub(e, f)) for f, _ in cross_cands]
    reqs += [(ctx, CrossNested(f, e)) for f, _ in down_cands]
    values = provider.batch_eval(reqs)
    deg = values[0]
    nc = len(cross_cands)
    cross_ok = {pid for (f, pid), v in zip(cross_cands, values[1 : 1 + nc]) if 2 * v > deg}
    down_ok = {pid for (f, pid), v in zip(down_cands, values[1 + nc :]) if 2 * v > deg}
    return frozenset(cross_ok), frozenset(down_ok)


def provider_graph(provider, ctx):
    """Graph whose edge list backs candidate endpoints: the sparsifier when
    the provider has one (bundles were sampled from it), else the real graph."""
    h = provider.proxy_graph()
    if h is not None:
        return h
    return provider.g


class PairAccumulator:
    """Ordered map from unordered path pairs to marked edges per side.

    Cross keys are canonicalized smaller path id first; down keys keep their
    (upper, lower) roles. Insertions are idempotent; drain yields each pair
    once, in key order, with side sets sorted top-to-bottom along the path.
    For down pairs only the upper side carries explicit marks (the lower
    path's relevant segment is materialized by the pairing step).
    """

    def __init__(self, d: PathDecomposition):
        self.d = d
        self._entries = {}

    def accumulate(self, p, q, e, kind):
        if kind == CROSS:
            if p == q:
                raise ValueError("cross pair needs two distinct paths")
            a, b = (p, q) if p < q else (q, p)
            key = (0, a, b)
            entry = self._entries.setdefault(key, (set(), set()))
            entry[0 if p == a else 1].add(e)
        elif kind == DOWN:
            key = (1, p, q)
            entry = self._entries.setdefault(key, (set(), set()))
            entry[0].add(e)
        else:
            raise ValueError(f"unknown kind {kind}")

    def drain(self):
        depth = self.d.tree._depth
        for key in sorted(self._entries):
            tag, p, q = key
            first, second = self._entries[key]
            yield (
                p,
                sorted(first, key=depth.__getitem__),
                q,
                sorted(second, key=depth.__getitem__),
                CROSS if tag == 0 else DOWN,
            )
