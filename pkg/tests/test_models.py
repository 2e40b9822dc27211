"""The three cost models: oracle accounting, stream passes, sketches, sampling."""

import io

import numpy as np
import pytest

from twocut.cutquery import (
    CutOracle,
    QueryProvider,
    build_proxy_via_oracle,
    oracle_cross_weight,
    recover_crossing_edge,
)
from twocut.graph import TreeEdgePair, WeightedGraph
from twocut.provider import TreeContext
from twocut.requests import CrossNested, CrossSub, DegSubtree, PairCut
from twocut.reservoir import reservoir_sample
from twocut.sequential import SequentialProvider
from twocut.sketch import L0Sketch
from twocut.streaming import StreamHarness, StreamProvider, build_proxy_via_stream, write_stream
from twocut.util import ceil_log2

from conftest import make_gstar, random_instance


# ---- cut-query oracle ----


def test_cut_query_counting_and_values():
    g, _ = make_gstar()
    oracle = CutOracle(g)
    assert oracle.cut({0}) == 2
    assert oracle.cut({1, 2}) == 7
    assert oracle.query_count == 2
    with pytest.raises(ValueError):
        oracle.cut(set())
    with pytest.raises(ValueError):
        oracle.cut(set(range(5)))


def test_oracle_cross_weight_examples():
    g, _ = make_gstar()
    oracle = CutOracle(g)
    assert oracle_cross_weight(oracle, {1, 2}, {3, 4}) == 6
    assert oracle.query_count == 3
    assert oracle_cross_weight(oracle, {0}, {1}) == 1
    two = CutOracle(WeightedGraph(3, [(0, 1, 4), (1, 2, 1)]))
    assert oracle_cross_weight(two, {0}, {2}) == 0
    with pytest.raises(ValueError):
        oracle_cross_weight(oracle, {0, 1}, {1, 2})


def test_recover_crossing_edge_any_mode():
    g, _ = make_gstar()
    oracle = CutOracle(g)
    got = recover_crossing_edge(oracle, {2})
    assert got is not None
    u, v, w = got
    assert {u, v} in ({1, 2}, {2, 4})
    assert w == g.edge_weight(u, v)
    assert oracle.query_count <= 6 * ceil_log2(g.n)


def test_recover_crossing_edge_weighted_uniform():
    g, _ = make_gstar()
    rng = np.random.default_rng(123)
    hits = 0
    trials = 20_000
    for _ in range(trials):
        oracle = CutOracle(g)
        u, v, _ = recover_crossing_edge(oracle, {2}, rng, mode="uniform")
        if {u, v} == {2, 4}:
            hits += 1
    assert abs(hits / trials - 0.8) <= 0.02


def test_recover_none_when_isolated():
    g = WeightedGraph(4, [(0, 1, 2), (1, 2, 1), (2, 3, 1), (0, 3, 5)])
    oracle = CutOracle(g)
    from twocut.cutquery import PeeledEdges

    peeled = PeeledEdges()
    for u, v, w in g.edges:
        peeled.add(u, v, w)
    assert recover_crossing_edge(oracle, {0, 1}, peeled=peeled) is None


def test_oracle_proxy_small_graphs_exact():
    rng = np.random.default_rng(77)
    for i in range(15):
        g, _ = random_instance(rng, 4, 12)
        oracle = CutOracle(g)
        h = build_proxy_via_oracle(oracle, eps=0.1, rng=np.random.default_rng(i))
        assert h.edges == g.edges


def test_query_provider_costs():
    g, t = make_gstar()
    oracle = CutOracle(g)
    provider = QueryProvider(oracle, proxy=None)
    ctx = TreeContext(t)
    base = oracle.query_count
    vals = provider.batch_eval([(ctx, PairCut(TreeEdgePair("orthogonal", 1, 3)))])
    assert vals == [2]
    assert oracle.query_count - base == 1
    base = oracle.query_count
    provider.batch_eval([(ctx, DegSubtree(3))])
    assert oracle.query_count - base == 1
    base = oracle.query_count
    provider.batch_eval([(ctx, CrossSub(1, 3))])
    assert oracle.query_count - base == 3
    base = oracle.query_count
    provider.batch_eval([(ctx, CrossNested(2, 1))])
    assert oracle.query_count - base == 3
    # b pair-cut requests cost exactly b queries
    kids = [TreeEdgePair("single", v) for v in (1, 2, 3, 4)]
    base = oracle.query_count
    provider.batch_eval([(ctx, PairCut(p)) for p in kids])
    assert oracle.query_count - base == 4


# ---- provider value equivalence ----


def all_requests(g, t):
    from twocut.graph import classify_pair

    kids = t.edge_children()
    reqs = [DegSubtree(v) for v in kids]
    for i, x in enumerate(kids):
        for y in kids[i + 1 :]:
            p = classify_pair(t, x, y)
            reqs.append(PairCut(p))
            if p.kind == "orthogonal":
                reqs.append(CrossSub(p.a, p.b))
            else:
                reqs.append(CrossNested(p.b, p.a))
    return reqs


def test_three_providers_agree_exactly():
    rng = np.random.default_rng(31)
    for i in range(12):
        g, t = random_instance(rng, 4, 12)
        reqs = all_requests(g, t)
        seq = SequentialProvider(g)
        ctx1 = TreeContext(t)
        v1 = seq.batch_eval([(ctx1, r) for r in reqs])
        oracle = CutOracle(g)
        qp = QueryProvider(oracle, proxy=None)
        ctx2 = TreeContext(t)
        v2 = qp.batch_eval([(ctx2, r) for r in reqs])
        harness = StreamHarness(g, seed=i, churn=0.5)
        sp = StreamProvider(harness, proxy=None)
        ctx3 = TreeContext(t)
        v3 = sp.batch_eval([(ctx3, r) for r in reqs])
        assert v1 == v2 == v3
        assert sp.stats.passes == 1  # one batch, one pass


# ---- stream harness ----


def test_stream_net_multiset_matches_graph():
    g, _ = make_gstar()
    h = StreamHarness(g, seed=3, churn=0.7)
    net = {}
    for u, v, w, op in h.updates:
        net[(u, v)] = net.get((u, v), 0) + w * op
    assert net == {(u, v): w for u, v, w in g.edges}
    # prefix weights never go negative
    run = {}
    for u, v, w, op in h.updates:
        run[(u, v)] = run.get((u, v), 0) + w * op
        assert run[(u, v)] >= 0


def test_counter_value_ignores_churn():
    g, t = make_gstar()
    vals = []
    for churn in (0.0, 0.5, 2.0):
        h = StreamHarness(g, seed=9, churn=churn)
        sp = StreamProvider(h, proxy=None)
        ctx = TreeContext(t)
        vals.append(sp.batch_eval([(ctx, DegSubtree(1))])[0])
    assert vals == [7, 7, 7]


def test_stream_dump_format():
    g, _ = make_gstar()
    h = StreamHarness(g, seed=1, churn=0.5)
    buf = io.StringIO()
    write_stream(h, buf)
    lines = buf.getvalue().strip().splitlines()
    assert len(lines) == len(h.updates)
    assert all(ln.split()[0] in "+-" and len(ln.split()) == 4 for ln in lines)


def test_stream_proxy_small_graphs_exact():
    rng = np.random.default_rng(5)
    for i in range(10):
        g, _ = random_instance(rng, 4, 12)
        h = StreamHarness(g, seed=100 + i, churn=0.5)
        proxy = build_proxy_via_stream(h, eps=0.1, rng=None)
        assert proxy.edges == g.edges
        assert h.pass_count == 1


# ---- sketches ----


def test_l0_single_edge_roundtrip():
    sk = L0Sketch(100, seed=5)
    sk.update(37, 4)
    assert sk.recover() == (37, 4)
    sk.update(37, -4)
    assert sk.recover() is None


def test_l0_linearity():
    # sketch(A) + sketch(B) - sketch(B) leaves cells (hence recovery)
    # identical to sketch(A)
    a = L0Sketch(64, seed=9)
    b = L0Sketch(64, seed=9)
    a.update(3, 2)
    a.update(17, 5)
    b.update(40, 1)
    b.update(3, 4)
    merged = a.copy()
    merged.merge(b)
    merged.subtract([(40, 1), (3, 4)])
    assert merged.cell_w == a.cell_w
    assert merged.cell_wx == a.cell_wx
    assert merged.cell_fp == a.cell_fp
    assert merged.recover() == a.recover()
    assert merged.recover() in ((3, 2), (17, 5))


def test_l0_random_multiset_recovery_rate():
    rng = np.random.default_rng(17)
    ok = 0
    for s in range(1000):
        sk = L0Sketch(512, seed=int(rng.integers(1 << 60)), reps=4)
        support = rng.choice(512, size=int(rng.integers(1, 60)), replace=False)
        for idx in support:
            sk.update(int(idx), int(rng.integers(1, 50)))
        got = sk.recover()
        if got is not None and got[0] in set(int(i) for i in support):
            ok += 1
    assert ok / 1000 >= 0.99


def test_l0_recovery_rate_and_uniformity():
    rng = np.random.default_rng(11)
    trials = 10_000
    support = list(range(0, 200, 2))[:20]
    counts = {i: 0 for i in support}
    fails = 0
    for s in range(trials):
        sk = L0Sketch(256, seed=int(rng.integers(1 << 60)), reps=4)
        for idx in support:
            sk.update(idx, 3)
        got = sk.recover()
        if got is None:
            fails += 1
        else:
            counts[got[0]] += 1
    assert fails / trials <= 0.01
    ok = trials - fails
    for idx in support:
        assert abs(counts[idx] / ok - 1 / len(support)) <= 0.05


# ---- reservoir ----


def test_reservoir_keeps_prefix():
    rng = np.random.default_rng(0)
    assert reservoir_sample(range(3), 3, rng) == [0, 1, 2]


def test_reservoir_marginals():
    rng = np.random.default_rng(42)
    trials = 100_000
    hits = np.zeros(2)
    for _ in range(trials):
        kept = reservoir_sample(range(2), 1, rng)
        hits[kept[0]] += 1
    assert abs(hits[0] / trials - 0.5) <= 0.01

    hits30 = np.zeros(30)
    for _ in range(trials // 10):
        for item in reservoir_sample(range(30), 3, rng):
            hits30[item] += 1
    freq = hits30 / (trials // 10)
    assert np.all(np.abs(freq - 0.1) <= 0.02)
