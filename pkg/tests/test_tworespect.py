"""Orchestrated search vs the exhaustive 2-respecting oracle (in-memory)."""

import numpy as np
import pytest

from twocut.graph import (
    GraphError,
    WeightedGraph,
    build_rooted_tree,
    cut_of_partition,
    oracle_2respect_min,
)
from twocut.sequential import SequentialProvider
from twocut.tworespect import min_2respect
from twocut.util import floor_log2

from conftest import make_gstar, random_instance


def test_gstar_value_and_partition():
    g, t = make_gstar()
    res = min_2respect(g, t, SequentialProvider(g), rng=1)
    assert res.value == 2
    assert cut_of_partition(g, res.partition) == 2


def test_star_and_path_trivia():
    star = WeightedGraph(5, [(0, i, 1) for i in range(1, 5)])
    t = build_rooted_tree(star, [(0, i) for i in range(1, 5)], 0)
    assert min_2respect(star, t, SequentialProvider(star), rng=0).value == 1

    path = WeightedGraph(5, [(i, i + 1, i + 2) for i in range(4)])
    t2 = build_rooted_tree(path, [(i, i + 1) for i in range(4)], 0)
    assert min_2respect(path, t2, SequentialProvider(path), rng=0).value == 2


def test_two_vertices():
    g = WeightedGraph(2, [(0, 1, 7)])
    t = build_rooted_tree(g, [(0, 1)], 0)
    res = min_2respect(g, t, SequentialProvider(g), rng=0)
    assert res.value == 7 and res.certificate.kind == "single"


def test_single_vertex_rejected():
    g = WeightedGraph(1, [])
    t = build_rooted_tree(g, [], 0)
    with pytest.raises(GraphError):
        min_2respect(g, t, SequentialProvider(g), rng=0)


def test_matches_oracle_on_random_instances():
    rng = np.random.default_rng(2024)
    misses = 0
    for i in range(150):
        g, t = random_instance(rng, 4, 14)
        provider = SequentialProvider(g)
        res = min_2respect(g, t, provider, rng=i)
        want = oracle_2respect_min(g, t)
        assert cut_of_partition(g, res.partition) == res.value
        assert res.value >= want.value
        if res.value != want.value:
            misses += 1
    assert misses == 0


def test_output_bounded_by_all_singles():
    rng = np.random.default_rng(7)
    for i in range(30):
        g, t = random_instance(rng, 4, 12)
        res = min_2respect(g, t, SequentialProvider(g), rng=i)
        for v in t.edge_children():
            assert res.value <= cut_of_partition(g, t.subtree(v))


def test_step5_work_bound():
    # total marked-list mass across drained pairs stays within the
    # 4 (n-1) (floor(log2 n) + 1) budget
    from twocut.hld import decompose
    from twocut.interesting import PairAccumulator
    from twocut.provider import TreeContext
    from twocut.tworespect import sampling_source, two_respect_plan, SearchSink
    from twocut.provider import run_lockstep

    rng = np.random.default_rng(40)
    for i in range(40):
        g, t = random_instance(rng, 5, 14)
        provider = SequentialProvider(g)
        # re-run the plan but intercept the accumulator mass via solver sizes
        res = min_2respect(g, t, provider, rng=i)
        n = g.n
        assert provider.stats.probes >= 0
        # direct bound check on the accumulator contents
        from twocut.interesting import (
            build_weight_classes,
            candidate_tops,
            sample_cross_candidates,
            sample_down_candidates,
            CROSS,
            DOWN,
        )
        d = decompose(t)
        wc = build_weight_classes(g, t, i)
        acc = PairAccumulator(d)
        deg = {v: cut_of_partition(g, t.subtree(v)) for v in t.edge_children()}
        for e in t.edge_children():
            bc = sample_cross_candidates(wc, t, e, None)
            bd = sample_down_candidates(wc, t, e, None)
            cc, dc = candidate_tops(d, e, bc, bd, g)
            for f, pid in cc:
                from twocut.graph import cross_weight
                if 2 * cross_weight(g, t.subtree(e), t.subtree(f)) > deg[e]:
                    acc.accumulate(int(d.path_of[e]), pid, e, CROSS)
            for f, pid in dc:
                rest = set(range(n)) - set(t.subtree(e))
                from twocut.graph import cross_weight as cw
                if 2 * cw(g, t.subtree(f), rest) > deg[e]:
                    acc.accumulate(int(d.path_of[e]), pid, e, DOWN)
        total = 0
        appearances = {}
        for p, mp, q, mq, kind in acc.drain():
            if kind == CROSS:
                total += len(mp) + len(mq)
            else:
                top = mp[0]
                cols = [f for f in d.paths[q] if t.lo[top] <= t.lo[f] and t.hi[f] <= t.hi[top]]
                total += len(mp) + len(cols)
            for e in mp + mq:
                appearances[e] = appearances.get(e, 0) + 1
        cap = floor_log2(n) + 1
        assert total <= 4 * (n - 1) * cap
        for e, c in appearances.items():
            assert c <= 2 * cap


def test_lockstep_round_counts():
    from twocut.provider import run_lockstep
    from twocut.sequential import SequentialProvider

    def fixed_rounds(k):
        for _ in range(k):
            yield []

    class _NullProvider:
        def batch_eval(self, items):
            return []

    # two instances of different depths: the deeper one sets the schedule
    rounds = run_lockstep([fixed_rounds(3), fixed_rounds(5)], _NullProvider())
    assert rounds == 5

    # worked example: step 1 + one step-3 round + verification + two
    # step-5 rounds
    g, t = make_gstar()
    provider = SequentialProvider(g)
    from twocut.provider import TreeContext
    from twocut.tworespect import SearchSink, sampling_source, two_respect_plan

    ctx = TreeContext(t)
    sample_graph, proxy = sampling_source(provider, g)
    sink = SearchSink()
    rounds = run_lockstep([two_respect_plan(ctx, sample_graph, proxy, 5, sink)], provider)
    assert sink.value == 2
    assert rounds <= 5

    # no non-tree edges: nothing interesting, no step-5 rounds
    from twocut.graph import WeightedGraph, build_rooted_tree

    path = WeightedGraph(4, [(0, 1, 3), (1, 2, 1), (2, 3, 2)])
    tp = build_rooted_tree(path, [(0, 1), (1, 2), (2, 3)], 0)
    ctx2 = TreeContext(tp)
    sink2 = SearchSink()
    provider2 = SequentialProvider(path)
    rounds2 = run_lockstep(
        [two_respect_plan(ctx2, path, None, 5, sink2)], provider2
    )
    assert sink2.value == 1
    assert rounds2 <= 4


def test_stream_dump_roundtrip():
    from twocut.streaming import StreamHarness, read_stream, write_stream
    import io

    g, _ = make_gstar()
    h = StreamHarness(g, seed=2, churn=1.0)
    buf = io.StringIO()
    write_stream(h, buf)
    assert read_stream(buf.getvalue()) == [(u, v, w, op) for u, v, w, op in h.updates]
