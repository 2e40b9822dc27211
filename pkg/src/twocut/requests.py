"""Cut-value request vocabulary shared by every cost backend.

A request names a quantity defined by one spanning tree's subtree ranges:

- DegSubtree(v): total weight leaving v's subtree.
- CrossSub(u, v): weight between the disjoint subtrees of u and v.
- CrossNested(v, u): weight between v's subtree and everything outside u's
  subtree, for v inside u's subtree.
- PairCut(pair): value of the cut crossing exactly the pair's tree edges.

The in-memory backend answers these from range indexes, the oracle backend
from counted cut queries, the stream backend from per-pass counters.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import TreeEdgePair


@dataclass(frozen=True)
class DegSubtree:
    v: int


@dataclass(frozen=True)
class CrossSub:
    u: int
    v: int


@dataclass(frozen=True)
class CrossNested:
    v: int
    u: int


@dataclass(frozen=True)
class PairCut:
    pair: TreeEdgePair


def request_key(ctx_uid, req):
    """Hashable identity used for batch dedup and caching."""
    if isinstance(req, DegSubtree):
        return (ctx_uid, 0, req.v, -1)
    if isinstance(req, CrossSub):
        a, b = (req.u, req.v) if req.u <= req.v else (req.v, req.u)
        return (ctx_uid, 1, a, b)
    if isinstance(req, CrossNested):
        return (ctx_uid, 2, req.v, req.u)
    if isinstance(req, PairCut):
        p = req.pair
        return (ctx_uid, 3, p.kind, p.a, p.b)
    raise TypeError(f"unknown request {req!r}")
