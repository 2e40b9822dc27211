"""Exact weighted min-cut through 2-respecting tree cuts.

The same search runs under three cost models: in-memory (2-d range
indexes), a counted cut-query oracle, and a multi-pass dynamic-stream
harness. `min_cut_pipeline` is the end-to-end entry point; `min_2respect`
solves one (graph, spanning tree) instance through any cost provider.
"""

from .cutquery import CutOracle, QueryProvider, oracle_cross_weight, query_provider, recover_crossing_edge
from .graph import (
    CutResult,
    DisconnectedError,
    GraphError,
    MalformedInputError,
    RootedSpanTree,
    SelfLoopError,
    TreeEdgePair,
    TreeStructureError,
    WeightedGraph,
    WeightOverflowError,
    build_rooted_tree,
    cut_of_partition,
    load_graph,
    oracle_2respect_min,
    oracle_min_cut,
    pair_cut_value,
    reconstruct_partition,
)
from .hld import decompose, top_edge_below, top_edges_on_root_path
from .interesting import (
    PairAccumulator,
    build_weight_classes,
    interesting_paths_for_edge,
    sample_cross_candidates,
    sample_down_candidates,
    verify_interest,
)
from .interval import CostMatrixHandle, ProbeLedger, bipartite_interval, interval_self, monge_check
from .packing import (
    PipelineConfig,
    Skeleton,
    TreePacking,
    build_skeleton,
    greedy_pack,
    lambda_schedule,
    min_cut_pipeline,
)
from .provider import CostProvider, RunStats, TreeContext, run_lockstep
from .proxy import ResourceBudgetError, build_proxy_graph
from .rangeindex import build_indexes, rect_weight, sample_rect, subtree_queries
from .requests import CrossNested, CrossSub, DegSubtree, PairCut
from .reservoir import reservoir_sample
from .sequential import SequentialProvider
from .sketch import L0Sketch, l0_recover, l0_subtract, l0_update
from .streaming import StreamHarness, StreamProvider, read_stream, stream_provider, write_stream
from .tworespect import min_2respect

__all__ = [name for name in dir() if not name.startswith("_")]
