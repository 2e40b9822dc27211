"""Graph core: loading, tree numbering, cut formulas, and the two oracles."""

import itertools

import numpy as np
import pytest

from twocut.graph import (
    NESTED,
    ORTHOGONAL,
    SINGLE,
    DisconnectedError,
    GraphError,
    MalformedInputError,
    SelfLoopError,
    TreeEdgePair,
    TreeStructureError,
    WeightedGraph,
    WeightOverflowError,
    build_rooted_tree,
    classify_pair,
    cut_of_partition,
    load_graph,
    oracle_2respect_min,
    oracle_min_cut,
    pair_cut_value,
    reconstruct_partition,
)

from conftest import make_gstar, random_instance


def test_load_triangle():
    g = load_graph("p 3 3\n0 1 1\n1 2 1\n0 2 1\n")
    assert g.n == 3 and g.m == 3
    assert g.total_weight == 3


def test_load_merges_parallel_edges():
    g = load_graph("p 2 2\n0 1 2\n1 0 3\n")
    assert g.m == 1
    assert g.edges == [(0, 1, 5)]


def test_load_empty_graph_disconnected():
    with pytest.raises(DisconnectedError):
        load_graph("p 2 0\n")


def test_load_dimacs_lines_are_one_based():
    g = load_graph("c comment\np 3 2\na 1 2 4\na 2 3 1\n")
    assert g.edges == [(0, 1, 4), (1, 2, 1)]


def test_load_distinct_errors():
    with pytest.raises(MalformedInputError):
        load_graph("p 2 1\n0 1\n")
    with pytest.raises(SelfLoopError):
        load_graph("p 2 1\n1 1 3\n")
    with pytest.raises(WeightOverflowError):
        load_graph(f"p 2 1\n0 1 {2**32 + 1}\n")
    with pytest.raises(MalformedInputError):
        load_graph("p 2 1\n0 1 1\n0 1 1\n")


def test_gstar_postorder_and_ranges():
    _, t = make_gstar()
    assert {v: int(t.po[v]) for v in range(5)} == {2: 0, 1: 1, 4: 2, 3: 3, 0: 4}
    assert t.range_of(1) == (0, 1)
    assert t.range_of(3) == (2, 3)
    assert t.range_of(0) == (0, 4)


def test_single_vertex_tree():
    g = WeightedGraph(1, [])
    t = build_rooted_tree(g, [], 0)
    assert int(t.po[0]) == 0 and t.range_of(0) == (0, 0)


def test_build_tree_rejects_bad_inputs(gstar):
    g, _ = gstar
    with pytest.raises(TreeStructureError):
        build_rooted_tree(g, [(0, 1), (1, 2), (0, 3)], 0)  # non-spanning
    with pytest.raises(TreeStructureError):
        build_rooted_tree(g, [(0, 1), (1, 3), (0, 3), (3, 4)], 0)  # cycle, misses vertex 2
    with pytest.raises(TreeStructureError):
        build_rooted_tree(g, [(0, 1), (1, 2), (0, 2), (3, 4)], 0)  # (0, 2) absent from g


def test_cut_of_partition_examples(gstar):
    g, _ = gstar
    assert cut_of_partition(g, {0}) == 2
    assert cut_of_partition(g, {1, 2}) == 7
    two = WeightedGraph(2, [(0, 1, 7)])
    assert cut_of_partition(two, {0}) == 7
    with pytest.raises(ValueError):
        cut_of_partition(g, set())
    with pytest.raises(ValueError):
        cut_of_partition(g, set(range(5)))


def test_pair_cut_values_on_gstar(gstar):
    g, t = gstar
    assert pair_cut_value(g, t, TreeEdgePair(ORTHOGONAL, 1, 3)) == 2
    assert pair_cut_value(g, t, TreeEdgePair(NESTED, 1, 2)) == 4
    assert pair_cut_value(g, t, TreeEdgePair(SINGLE, 2)) == 5


def test_pair_kind_mismatch_rejected(gstar):
    _, t = gstar
    g, _ = gstar
    with pytest.raises(ValueError):
        pair_cut_value(g, t, TreeEdgePair(ORTHOGONAL, 1, 2))
    with pytest.raises(ValueError):
        pair_cut_value(g, t, TreeEdgePair(NESTED, 3, 2))


def test_reconstruct_partition_examples(gstar):
    _, t = gstar
    assert reconstruct_partition(t, TreeEdgePair(ORTHOGONAL, 1, 3)) == {1, 2, 3, 4}
    assert reconstruct_partition(t, TreeEdgePair(NESTED, 1, 2)) == {1}
    assert reconstruct_partition(t, TreeEdgePair(SINGLE, 3)) == {3, 4}


def test_oracle_min_cut_examples(gstar):
    g, _ = gstar
    assert oracle_min_cut(g).value == 2
    tri = load_graph("p 3 3\n0 1 1\n1 2 1\n0 2 1\n")
    assert oracle_min_cut(tri).value == 2
    path = WeightedGraph(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1)])
    assert oracle_min_cut(path).value == 1
    with pytest.raises(GraphError):
        oracle_min_cut(WeightedGraph(1, []))


def test_oracle_min_cut_partition_is_witness():
    rng = np.random.default_rng(7)
    for _ in range(25):
        g, _ = random_instance(rng, 4, 10)
        res = oracle_min_cut(g)
        assert cut_of_partition(g, res.partition) == res.value


def test_exhaustive_flag_cap():
    rng = np.random.default_rng(3)
    g, _ = random_instance(rng, 20, 20)
    with pytest.raises(GraphError):
        oracle_min_cut(g, exhaustive=True)


def test_stoer_wagner_matches_exhaustive():
    rng = np.random.default_rng(11)
    for _ in range(30):
        g, _ = random_instance(rng, 4, 12)
        assert oracle_min_cut(g, exhaustive=False).value == oracle_min_cut(g).value
    res = oracle_min_cut(g, exhaustive=False)
    assert cut_of_partition(g, res.partition) == res.value


def test_oracle_2respect_on_gstar(gstar):
    g, t = gstar
    res = oracle_2respect_min(g, t)
    assert res.value == 2
    # two orthogonal pairs tie at 2; the (po(a), po(b)) rule picks children (2, 4)
    assert res.certificate == TreeEdgePair(ORTHOGONAL, 2, 4)
    assert cut_of_partition(g, res.partition) == 2


def test_oracle_2respect_trivia():
    star = WeightedGraph(4, [(0, 1, 1), (0, 2, 1), (0, 3, 1)])
    t = build_rooted_tree(star, [(0, 1), (0, 2), (0, 3)], 0)
    res = oracle_2respect_min(star, t)
    assert res.value == 1 and res.certificate.kind == SINGLE
    two = WeightedGraph(2, [(0, 1, 7)])
    t2 = build_rooted_tree(two, [(0, 1)], 0)
    res2 = oracle_2respect_min(two, t2)
    assert res2.value == 7 and res2.certificate.kind == SINGLE


def all_pairs(t):
    kids = t.edge_children()
    for u in kids:
        yield TreeEdgePair(SINGLE, u)
    for x, y in itertools.combinations(kids, 2):
        yield classify_pair(t, x, y)


def test_pair_formula_equals_partition_cut_small_random():
    rng = np.random.default_rng(19)
    for _ in range(40):
        g, t = random_instance(rng, 2, 9)
        for p in all_pairs(t):
            assert pair_cut_value(g, t, p) == cut_of_partition(g, reconstruct_partition(t, p))


def test_2respect_at_least_min_cut_and_tight_when_applicable():
    rng = np.random.default_rng(23)
    for _ in range(60):
        g, t = random_instance(rng, 4, 11)
        mc = oracle_min_cut(g)
        r2 = oracle_2respect_min(g, t)
        assert r2.value >= mc.value
        tree_children = set(t.edge_children())
        crossing = 0
        for v in tree_children:
            p = int(t.parent[v])
            if (v in mc.partition) != (p in mc.partition):
                crossing += 1
        if crossing <= 2:
            assert r2.value == mc.value


def test_po_ranges_match_ancestor_walks():
    rng = np.random.default_rng(29)
    for _ in range(20):
        g, t = random_instance(rng, 3, 12)
        for v in range(g.n):
            chain = set()
            x = v
            while x != -1:
                chain.add(x)
                x = int(t.parent[x]) if x != t.root else -1
            for u in range(g.n):
                assert t.is_ancestor(u, v) == (u in chain)
                if u != v:
                    disjoint = not (t.is_ancestor(u, v) or t.is_ancestor(v, u))
                    assert t.orthogonal(u, v) == disjoint
