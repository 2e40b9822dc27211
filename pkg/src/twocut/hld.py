"""Heavy-light decomposition and root-path / segment decomposition queries.

The tree's edges are split into vertical paths (each stored top edge first)
such that any root-to-leaf walk meets at most floor(log2 n) + 1 of them:
every step off a path follows a light edge, which at least halves the
subtree size. Queries return, per decomposition path met by a walk, the top
edge of the met segment.
"""

from __future__ import annotations

import numpy as np

from .graph import RootedSpanTree


class PathDecomposition:
    """paths[p] lists child vertices of the path's edges, root-most first."""

    def __init__(self, t: RootedSpanTree):
        self.tree = t
        n = t.n
        heavy = np.full(n, -1, dtype=np.int64)
        for v in range(n):
            best = -1
            best_size = 0
            for c in t.children[v]:
                s = int(t.size[c])
                if s > best_size:  # ties go to the smaller id, which comes first
                    best = c
                    best_size = s
            heavy[v] = best
        self.heavy = heavy
        path_of = np.full(n, -1, dtype=np.int64)
        paths = []
        for v in range(n):
            if v == t.root:
                continue
            p = int(t.parent[v])
            if p == t.root or heavy[p] != v:
                chain = []
                x = v
                while x != -1:
                    chain.append(x)
                    x = int(heavy[x])
                pid = len(paths)
                paths.append(chain)
                for c in chain:
                    path_of[c] = pid
        self.paths = paths
        self.path_of = path_of
        self.top_edge = np.asarray([p[0] for p in paths], dtype=np.int64) if paths else np.zeros(0, np.int64)
        # plain-int mirrors for the hot walks
        self._path_of = path_of.tolist()
        self._top = self.top_edge.tolist()
        self._rp_cache = {}
        # depth of each path's top edge child, for O(1) segment indexing
        self._top_depth = [t._depth[p[0]] for p in paths]

    def edges_of(self, pid):
        return self.paths[pid]

    def root_entries(self, x):
        """Cached top_edges_on_root_path(x); one walk per vertex per tree."""
        got = self._rp_cache.get(x)
        if got is None:
            got = top_edges_on_root_path(self, x)
            self._rp_cache[x] = got
        return got

    def suffix_tops_below_depth(self, x, da):
        """Per-path segment tops of the root-to-x line strictly below depth da.

        Equivalent to top_edge_below(anchor, x) where anchor is the line's
        vertex at depth da, but served from the cached root decomposition.
        """
        entries = self.root_entries(x)
        t = self.tree
        j = len(entries)
        for i, (top, _) in enumerate(entries):
            if t._depth[top] > da:
                j = i
                break
        out = []
        if j >= 1:
            top_prev, pid_prev = entries[j - 1]
            end = (t._depth[entries[j][0]] - 1) if j < len(entries) else t._depth[x]
            if da + 1 <= end:
                out.append((self.segment_edge_at_depth(pid_prev, da + 1), pid_prev))
        out.extend(entries[j:])
        return out

    def cross_anchor_depth(self, u, x):
        """Depth of the deepest vertex on the root-to-x line that is an
        ancestor of u (the point where u's branch diverges)."""
        t = self.tree
        entries = self.root_entries(x)
        last = -1
        for i, (top, _) in enumerate(entries):
            if t.is_ancestor(top, u):
                last = i
            else:
                break
        if last < 0:
            return 0  # only the root is shared
        top, pid = entries[last]
        end = (t._depth[entries[last + 1][0]] - 1) if last + 1 < len(entries) else t._depth[x]
        lo = t._depth[top]
        hi = min(end, t._depth[u])
        # deepest on-line child of this window that is still an ancestor of u
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if t.is_ancestor(self.segment_edge_at_depth(pid, mid), u):
                lo = mid
            else:
                hi = mid - 1
        return lo

    def lca(self, a, b):
        """Lowest common ancestor by jumping chain heads; O(log n)."""
        t = self.tree
        while True:
            if t.is_ancestor(a, b):
                return a
            if t.is_ancestor(b, a):
                return b
            # neither is the root now, so both have chains
            ta = self._top[self._path_of[a]]
            tb = self._top[self._path_of[b]]
            if t._depth[ta] >= t._depth[tb]:
                a = t._parent[ta]
            else:
                b = t._parent[tb]

    def segment_edge_at_depth(self, pid, d):
        """Edge of path pid whose child sits at depth d."""
        return self.paths[pid][d - self._top_depth[pid]]


def decompose(t: RootedSpanTree) -> PathDecomposition:
    if t.n < 2:
        raise ValueError("decomposition needs at least one edge")
    return PathDecomposition(t)


def top_edges_on_root_path(d: PathDecomposition, v: int):
    """For each decomposition path met by the root-to-v walk, its top edge.

    Returned as (edge_child, path_id) pairs ordered from the root toward v;
    empty for the root itself.
    """
    t = d.tree
    if v == t.root:
        return []
    out = []
    x = v
    while x != t.root:
        pid = d._path_of[x]
        top = d._top[pid]
        out.append((top, pid))
        x = t._parent[top]
    out.reverse()
    return out


def top_edge_below(d: PathDecomposition, u: int, v: int):
    """Same walk restricted to the u-to-v segment, for v inside u's subtree.

    For each decomposition path met strictly below u, the segment's top edge;
    the first path met may be entered mid-path, in which case the top edge is
    the edge just below u.
    """
    t = d.tree
    if v == u:
        raise ValueError("segment needs v strictly below u")
    if not t.is_ancestor(u, v):
        raise ValueError(f"{v} is not in the subtree of {u}")
    out = []
    x = v
    while True:
        pid = d._path_of[x]
        top = d._top[pid]
        if top != u and t.is_ancestor(u, top):
            # whole head of this path lies below u
            out.append((top, pid))
            x = t._parent[top]
            if x == u:
                break
        else:
            # path climbs past u: the segment's top edge hangs right below u
            out.append((d.segment_edge_at_depth(pid, t._depth[u] + 1), pid))
            break
    out.reverse()
    return out
