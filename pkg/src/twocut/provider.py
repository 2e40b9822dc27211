"""The cost-provider contract and the lockstep round scheduler.

A provider answers batches of cut-value requests (see requests.py) with
exact values in the underlying graph; what differs between providers is the
resource being spent: nothing (in-memory indexes), counted oracle queries,
or stream passes. Search code is written against this contract only, which
is what makes the three execution models interchangeable.

Requests are paired with the TreeContext they refer to, so one provider can
serve many spanning trees in the same run and a scheduler can merge their
rounds: all solver instances advance one recursion depth per provider batch,
and under the stream model one batch is exactly one pass.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from .graph import SINGLE, ORTHOGONAL, NESTED, RootedSpanTree
from .requests import CrossNested, CrossSub, DegSubtree, PairCut, request_key


@dataclass
class RunStats:
    """Resource ledgers; fields a model never touches stay zero."""

    probes: int = 0
    queries: int = 0
    passes: int = 0
    tracked_words: int = 0
    wall_ms: int = 0
    trees_packed: int = 0
    lambda_guesses: int = 0

    def to_json(self, value, seed) -> str:
        payload = {
            "value": value,
            "queries": self.queries,
            "passes": self.passes,
            "tracked_words": self.tracked_words,
            "probes": self.probes,
            "wall_ms": self.wall_ms,
            "seed": seed,
        }
        return json.dumps(payload)


_ctx_ids = itertools.count()


class TreeContext:
    """One rooted spanning tree viewed by providers: uid plus range helpers."""

    def __init__(self, tree: RootedSpanTree):
        self.uid = next(_ctx_ids)
        self.tree = tree
        self.n = tree.n

    def subtree_interval(self, v):
        return (int(self.tree.lo[v]), int(self.tree.hi[v]))

    def complement_intervals(self, v):
        lo, hi = self.subtree_interval(v)
        return ((0, lo - 1), (hi + 1, self.n - 1))

    def pair_intervals(self, pair):
        """The pair's cut side as a union of disjoint po-intervals."""
        if pair.kind == SINGLE:
            return (self.subtree_interval(pair.a),)
        if pair.kind == ORTHOGONAL:
            return (self.subtree_interval(pair.a), self.subtree_interval(pair.b))
        if pair.kind == NESTED:
            (al, ah) = self.subtree_interval(pair.a)
            (bl, bh) = self.subtree_interval(pair.b)
            return ((al, bl - 1), (bh + 1, ah))
        raise ValueError(f"unknown pair kind {pair.kind}")


def request_plan(ctx: TreeContext, req):
    """Reduce a request to ('cut', side) or ('cross', a, b) interval unions."""
    if isinstance(req, DegSubtree):
        return ("cut", (ctx.subtree_interval(req.v),))
    if isinstance(req, PairCut):
        return ("cut", ctx.pair_intervals(req.pair))
    if isinstance(req, CrossSub):
        return ("cross", (ctx.subtree_interval(req.u),), (ctx.subtree_interval(req.v),))
    if isinstance(req, CrossNested):
        return ("cross", (ctx.subtree_interval(req.v),), ctx.complement_intervals(req.u))
    raise TypeError(f"unknown request {req!r}")


class CostProvider:
    """Base: batch dedup plus caching of subtree degrees across rounds."""

    def __init__(self):
        self.stats = RunStats()
        self._deg_cache = {}

    def batch_eval(self, items):
        """items: list of (TreeContext, request); returns aligned exact values."""
        keys = [request_key(ctx.uid, req) for ctx, req in items]
        todo = {}
        for key, (ctx, req) in zip(keys, items):
            if key in self._deg_cache or key in todo:
                continue
            todo[key] = (ctx, req)
        answers = {}
        if todo:
            fresh = self._eval_unique(list(todo.values()))
            for key, value in zip(todo.keys(), fresh):
                answers[key] = value
                if key[1] == 0:  # DegSubtree: cheap to keep, reused constantly
                    self._deg_cache[key] = value
        return [self._deg_cache.get(k, answers.get(k)) for k in keys]

    def _eval_unique(self, items):
        raise NotImplementedError

    def proxy_graph(self):
        """Sparsifier handle for candidate filtering; None when values are
        already cheap enough to check exactly."""
        return None


def run_lockstep(tasks, provider: CostProvider):
    """Drive request-yielding generators in rounds, one batch per round.

    Each task yields a list of (ctx, request) items and receives the aligned
    values; tasks that finish early simply drop out of later rounds.
    """
    live = []
    for task in tasks:
        try:
            live.append((task, task.send(None)))
        except StopIteration:
            pass
    rounds = 0
    while live:
        batch = []
        for _, reqs in live:
            batch.extend(reqs)
        values = provider.batch_eval(batch) if batch else []
        rounds += 1
        pos = 0
        advanced = []
        for task, reqs in live:
            chunk = values[pos : pos + len(reqs)]
            pos += len(reqs)
            try:
                advanced.append((task, task.send(chunk)))
            except StopIteration:
                pass
        live = advanced
    return rounds
