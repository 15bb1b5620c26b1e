"""argweave: semantic knowledge graphs for argumentative evidence corpora.

Build thresholded k-NN similarity graphs over evidence at a chosen
granularity, analyze them (Louvain communities, weighted PageRank), and
construct debate cases as constrained weighted shortest paths between
user-supplied arguments.
"""

from .annindex import IndexMode, VectorIndex, build_index
from .casebuilder import (
    ArgumentQuery,
    CaseEngine,
    CaseEntry,
    DebateCase,
    case_word_count,
    highlight_overlap,
)
from .corpus import (
    Corpus,
    Entity,
    EvidenceDoc,
    Granularity,
    IngestReport,
    entity_view,
    load_corpus,
    segment_sentences,
)
from .embedding import (
    HashedEmbedder,
    cosine_similarity,
    embed_entities,
    hashed_embed,
    load_vectors,
    save_vectors,
)
from .evalharness import EvalRow, evaluate_graph, format_report, load_pairs, rank_graphs
from .pathing import (
    CostKind,
    EdgeCost,
    PathConstraint,
    PathResult,
    k_shortest_paths,
    multi_waypoint_path,
    shortest_path,
    subgraph_view,
)
from .queryfilter import evaluate_filter, parse_filter, print_filter, select_entities
from .rendering import render_case_text
from .semgraph import (
    CommunityAssignment,
    GraphConfig,
    GraphStats,
    SemanticGraph,
    build_graph,
    graph_stats,
    load_graph,
    louvain_communities,
    modularity,
    pagerank,
    persist_graph,
)

__version__ = "0.1.0"

__all__ = [
    "ArgumentQuery",
    "CaseEngine",
    "CaseEntry",
    "CommunityAssignment",
    "Corpus",
    "CostKind",
    "DebateCase",
    "EdgeCost",
    "Entity",
    "EvalRow",
    "EvidenceDoc",
    "Granularity",
    "GraphConfig",
    "GraphStats",
    "HashedEmbedder",
    "IndexMode",
    "IngestReport",
    "PathConstraint",
    "PathResult",
    "SemanticGraph",
    "VectorIndex",
    "build_graph",
    "build_index",
    "case_word_count",
    "cosine_similarity",
    "embed_entities",
    "entity_view",
    "evaluate_filter",
    "evaluate_graph",
    "format_report",
    "graph_stats",
    "hashed_embed",
    "highlight_overlap",
    "k_shortest_paths",
    "load_corpus",
    "load_graph",
    "load_pairs",
    "load_vectors",
    "louvain_communities",
    "modularity",
    "multi_waypoint_path",
    "pagerank",
    "parse_filter",
    "persist_graph",
    "print_filter",
    "rank_graphs",
    "render_case_text",
    "save_vectors",
    "segment_sentences",
    "select_entities",
    "shortest_path",
    "subgraph_view",
]
