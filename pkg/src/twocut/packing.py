"""Greedy tree packing, skeleton sampling, and the full min-cut pipeline.

A greedy packing makes each tree a minimum spanning tree under the loads
its predecessors put on the edges (load compared per unit of weight, ties
by edge id). Any cut close to the minimum must 2-respect a constant
fraction of a long enough packing, so solving the 2-respecting problem on
every packed tree and keeping the best answer finds the global minimum cut
with high probability. The skeleton step thins heavy graphs first so the
packing stays logarithmic; guessed thinning rates that turn out wrong cost
work, never correctness, because every candidate value is evaluated exactly
in the input graph.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .graph import CutResult, GraphError, WeightedGraph, build_rooted_tree, reconstruct_partition
from .provider import TreeContext, run_lockstep
from .proxy import build_proxy_graph
from .sequential import SequentialProvider
from .tworespect import SearchSink, sampling_source, two_respect_plan
from .util import DisjointSets, ceil_log2, rng_for

MODES = ("sequential", "cut-query", "streaming")


@dataclass
class PipelineConfig:
    """Constants of the reduction, exposed for calibration."""

    skeleton_rate_factor: float = 12.0      # c1 in p = min(1, c1 ln n / (eps^2 guess))
    trees_factor: float = 6.0               # c2 in k = ceil(c2 ln n)
    proxy_budget_factor: float = 4.0        # c3 in the proxy edge budget
    proxy_forest_factor: float = 1.0        # c4 in forests per weight class
    sample_multiplier: int = 4
    sparsify_threshold_factor: float = 4.0  # sparsify when m > factor * n * log2(n)^2
    tracked_words_factor: float = 50.0      # c5 in the stream space budget
    churn: float = 0.0
    trees_override: Optional[int] = None


@dataclass
class TreePacking:
    """Greedily packed spanning trees of a host graph.

    trees[i] holds host edge ids; loads[e] counts the trees using e.
    """

    host: WeightedGraph
    trees: list = field(default_factory=list)
    loads: list = field(default_factory=list)

    def tree_edges(self, i):
        return [(self.host.edges[eid][0], self.host.edges[eid][1]) for eid in self.trees[i]]


@dataclass
class Skeleton:
    graph: WeightedGraph
    rate: float
    lambda_guess: int


def greedy_pack(host: WeightedGraph, k: int, tie_break="id") -> TreePacking:
    """k spanning trees, each an MST under current per-unit-weight loads."""
    if host.n < 2:
        raise GraphError("packing needs at least one edge")
    if not host.is_connected():
        raise GraphError("host must be connected")
    if tie_break != "id":
        raise ValueError("only the edge-id tie rule is supported")
    packing = TreePacking(host, loads=[0] * host.m)
    edges = [(eid, u, v, w) for eid, (u, v, w) in enumerate(host.edges)]
    for _ in range(k):
        # load per unit of weight; zero-weight edges absorb nothing, go last
        order = sorted(
            edges,
            key=lambda e: (packing.loads[e[0]] / e[3] if e[3] else math.inf, e[0]),
        )
        ds = DisjointSets(host.n)
        tree = []
        for eid, u, v, _ in order:
            if ds.union(u, v):
                tree.append(eid)
                if len(tree) == host.n - 1:
                    break
        tree.sort()
        packing.trees.append(tree)
        for eid in tree:
            packing.loads[eid] += 1
    return packing


def lambda_schedule(host: WeightedGraph):
    """Halving guesses from the min weighted degree down to its 1/(2n) floor."""
    if host.n < 2:
        raise GraphError("no cut to guess on a single vertex")
    top = host.min_weighted_degree()
    floor = max(1, top // (2 * host.n))
    out = []
    guess = max(1, top)
    while True:
        out.append(guess)
        if guess <= floor:
            break
        guess = max(floor, guess // 2)
    return out


def skeleton_rate(n, eps, lambda_guess, factor=12.0) -> float:
    return min(1.0, factor * math.log(max(n, 2)) / (eps * eps * lambda_guess))


def build_skeleton(host: WeightedGraph, eps, lambda_guess, rng) -> Skeleton:
    """Thin the host: per edge a binomial sample of its weight units.

    Disconnected samples retry with a doubled rate; reaching rate 1 returns
    the host itself.
    """
    if lambda_guess < 1:
        raise ValueError("lambda guess must be >= 1")
    p = skeleton_rate(host.n, eps, lambda_guess)
    retries = max(1, ceil_log2(max(2, math.ceil(1.0 / p))) + 1) if p < 1 else 1
    for _ in range(retries):
        if p >= 1:
            return Skeleton(host, 1.0, lambda_guess)
        weights = rng.binomial(np.asarray([w for _, _, w in host.edges], dtype=np.int64), p)
        edges = [
            (u, v, int(nw))
            for (u, v, _), nw in zip(host.edges, weights)
            if nw > 0
        ]
        try:
            skel = WeightedGraph(host.n, edges)
            return Skeleton(skel, p, lambda_guess)
        except GraphError:
            p = min(1.0, 2 * p)
    raise GraphError("skeleton stayed disconnected after rate doubling")


def trees_to_run(host: WeightedGraph, eps, seed, cfg: PipelineConfig):
    """Packed trees across the guess schedule, deduplicated.

    Guesses whose skeleton rate saturates at 1 share one exact packing, and
    identical trees are solved once; every distinct packed tree is run.
    """
    schedule = lambda_schedule(host)
    k = cfg.trees_override or max(1, math.ceil(cfg.trees_factor * math.log(max(host.n, 2))))
    unique = []
    seen = set()
    packed_total = 0
    exact_done = False
    for j, guess in enumerate(schedule):
        p = skeleton_rate(host.n, eps, guess, cfg.skeleton_rate_factor)
        if p >= 1:
            if exact_done:
                continue
            exact_done = True
            skel = Skeleton(host, 1.0, guess)
        else:
            skel = build_skeleton(host, eps, guess, rng_for(seed, 3, j))
        packing = greedy_pack(skel.graph, k)
        packed_total += k
        for i in range(k):
            edges = tuple(sorted(packing.tree_edges(i)))
            if edges not in seen:
                seen.add(edges)
                unique.append(edges)
    return unique, schedule, packed_total


def _providers_for(g, mode, eps, seed, cfg):
    if mode == "sequential":
        provider = SequentialProvider(g)
        threshold = cfg.sparsify_threshold_factor * g.n * max(1, ceil_log2(max(g.n, 2))) ** 2
        if g.m > threshold:
            host = build_proxy_graph(g, eps, rng_for(seed, 4), cfg.proxy_forest_factor, cfg.proxy_budget_factor)
        else:
            host = g
        return provider, host, None
    if mode == "cut-query":
        from .cutquery import CutOracle, QueryProvider
        oracle = CutOracle(g)
        proxy = build_proxy_graph(oracle, eps, rng_for(seed, 4), cfg.proxy_forest_factor, cfg.proxy_budget_factor)
        provider = QueryProvider(oracle, proxy)
        return provider, proxy, oracle
    if mode == "streaming":
        from .streaming import StreamHarness, StreamProvider
        harness = StreamHarness(g, seed=seed, churn=cfg.churn)
        proxy = build_proxy_graph(harness, eps, rng_for(seed, 4), cfg.proxy_forest_factor, cfg.proxy_budget_factor)
        provider = StreamProvider(harness, proxy, words_budget=_words_budget(g.n, cfg))
        return provider, proxy, None
    raise ValueError(f"unknown mode {mode!r}; pick one of {MODES}")


def _words_budget(n, cfg):
    # asymptotic budget; tiny instances are floored because fixed sketch
    # overhead dominates them
    n_eff = max(n, 32)
    lg = max(1, ceil_log2(n_eff))
    return int(cfg.tracked_words_factor * n_eff * lg**3)


def min_cut_pipeline(g: WeightedGraph, mode="sequential", eps=0.1, rng=None,
                     config: Optional[PipelineConfig] = None):
    """Global minimum cut, with high probability, under the chosen model.

    Returns (CutResult, RunStats). Wrong skeleton guesses only add work:
    every candidate cut value is evaluated exactly in g.
    """
    if g.n < 2:
        raise GraphError("no cut exists on a single vertex")
    if not (0 < eps <= 0.1):
        raise ValueError("eps must lie in (0, 1/10]")
    cfg = config or PipelineConfig()
    seed = rng if isinstance(rng, int) else (0 if rng is None else int(rng.integers(1 << 62)))
    started = time.monotonic()

    provider, host, _ = _providers_for(g, mode, eps, seed, cfg)
    trees, schedule, packed_total = trees_to_run(host, eps, seed, cfg)

    sample_graph, proxy = sampling_source(provider, g)
    tasks = []
    sinks = []
    ctxs = []
    for ti, edges in enumerate(trees):
        t = build_rooted_tree(g, edges, root=0)
        ctx = TreeContext(t)
        sink = SearchSink()
        wc_seed = int(rng_for(seed, 7, ti).integers(1 << 62))
        tasks.append(two_respect_plan(ctx, sample_graph, proxy, wc_seed, sink, cfg.sample_multiplier))
        sinks.append(sink)
        ctxs.append(ctx)
    run_lockstep(tasks, provider)

    best = None
    for sink, ctx in zip(sinks, ctxs):
        cand = (sink.value, sink, ctx)
        if best is None or cand[0] < best[0]:
            best = cand
        provider.stats.probes += sink.probes
    value, sink, ctx = best
    stats = provider.stats
    stats.trees_packed = packed_total
    stats.lambda_guesses = len(schedule)
    stats.wall_ms = int((time.monotonic() - started) * 1000)
    result = CutResult(value, sink.pair, reconstruct_partition(ctx.tree, sink.pair))
    return result, stats
