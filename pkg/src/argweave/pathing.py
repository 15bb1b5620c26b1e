"""Constrained weighted shortest paths over the semantic graph.

Traversal cost is either pure semantic distance (1 - similarity) or semantic
distance plus a length penalty on the entered node's extract word count,
normalized by the corpus median. Constraints restrict traversal to a node
predicate (community membership, keyword include/exclude over the parent
document, extract length, or a parsed filter expression); edges survive only
when both endpoints pass.

Determinism: among equal-cost paths the lexicographically smallest node
sequence wins, everywhere. Path costs are always accumulated hop by hop from
the source so equal-cost comparisons are reproducible bit-for-bit.

Paths are capped at MAX_HOPS edges by default (a debate case reads at most
about a dozen pieces of evidence); when every route to the target needs more
hops than the budget allows, the search fails with HOP_BUDGET_EXCEEDED
rather than silently returning an over-long chain.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional

from .corpus import Corpus
from .errors import (
    EndpointExcludedError,
    HopBudgetExceededError,
    NoDisjointCombinationError,
    NoPathError,
)
from .queryfilter import FilterExpr, evaluate_filter
from .semgraph import SemanticGraph

MAX_HOPS = 11  # 12 nodes; cases run around 3-12 pieces of evidence
MAX_K = 100
DEFAULT_K = 10


class CostKind(Enum):
    SEMANTIC_DISTANCE = "semantic_distance"
    LENGTH_PENALIZED = "length_penalized"


@dataclass(frozen=True)
class EdgeCost:
    """Pluggable traversal cost.

    SEMANTIC_DISTANCE charges 1 - weight(u, v). LENGTH_PENALIZED adds
    lam * extract_word_count(v) / norm_words for the node being entered,
    which steers cases toward shorter spoken extracts.
    """

    kind: CostKind = CostKind.SEMANTIC_DISTANCE
    lam: float = 0.5
    norm_words: float = 1.0

    def __post_init__(self):
        if self.lam < 0:
            raise ValueError("lam must be >= 0")
        if self.norm_words <= 0:
            raise ValueError("norm_words must be > 0")

    def hop_cost(self, weight: float, entered_words: int) -> float:
        base = 1.0 - weight
        if self.kind is CostKind.SEMANTIC_DISTANCE:
            return base
        return base + self.lam * entered_words / self.norm_words


@dataclass(frozen=True)
class PathConstraint:
    """Conjunction of optional node predicates; an empty constraint passes all."""

    community_ids: Optional[frozenset[int]] = None
    keyword_include: tuple[str, ...] = ()
    keyword_exclude: tuple[str, ...] = ()
    max_extract_words: Optional[int] = None
    filter_ast: Optional[FilterExpr] = None

    @staticmethod
    def build(
        community_ids: Iterable[int] | None = None,
        keyword_include: Iterable[str] = (),
        keyword_exclude: Iterable[str] = (),
        max_extract_words: int | None = None,
        filter_ast: FilterExpr | None = None,
    ) -> "PathConstraint":
        return PathConstraint(
            community_ids=frozenset(community_ids) if community_ids is not None else None,
            keyword_include=tuple(keyword_include),
            keyword_exclude=tuple(keyword_exclude),
            max_extract_words=max_extract_words,
            filter_ast=filter_ast,
        )

    def is_empty(self) -> bool:
        return (
            self.community_ids is None
            and not self.keyword_include
            and not self.keyword_exclude
            and self.max_extract_words is None
            and self.filter_ast is None
        )


@dataclass
class PathResult:
    node_sequence: list[str]
    total_cost: float
    hop_similarities: list[float]


class SubgraphView:
    """Lazy constrained view; no copy of the underlying graph.

    Node verdicts are memoized. An edge is traversable iff both endpoints
    pass, which falls out of filtering at expansion time.
    """

    def __init__(
        self,
        graph: SemanticGraph,
        constraint: PathConstraint,
        corpus: Corpus | None = None,
        banned_nodes: frozenset[str] = frozenset(),
        banned_edges: frozenset[tuple[str, str]] = frozenset(),
    ):
        self.graph = graph
        self.constraint = constraint
        self.corpus = corpus
        self._banned_nodes = banned_nodes
        self._banned_edges = banned_edges
        self._cache: dict[str, bool] = {}

    def restricted(
        self,
        banned_nodes: Iterable[str] = (),
        banned_edges: Iterable[tuple[str, str]] = (),
    ) -> "SubgraphView":
        view = SubgraphView(
            self.graph,
            self.constraint,
            self.corpus,
            frozenset(banned_nodes) | self._banned_nodes,
            frozenset(banned_edges) | self._banned_edges,
        )
        view._cache = self._cache  # constraint verdicts are ban-independent
        return view

    def passes(self, node: str) -> bool:
        if node in self._banned_nodes:
            return False
        return self._passes_constraint(node)

    def _passes_constraint(self, node: str) -> bool:
        cached = self._cache.get(node)
        if cached is not None:
            return cached
        verdict = self._evaluate(node)
        self._cache[node] = verdict
        return verdict

    def _evaluate(self, node: str) -> bool:
        c = self.constraint
        if c.is_empty():
            return True
        attrs = self.graph.attrs(node)
        if c.community_ids is not None and attrs.community_id not in c.community_ids:
            return False
        if c.max_extract_words is not None and attrs.extract_word_count > c.max_extract_words:
            return False
        needs_doc = c.keyword_include or c.keyword_exclude or c.filter_ast is not None
        if needs_doc:
            if self.corpus is None or attrs.parent_doc_id not in self.corpus:
                return False
            doc = self.corpus.get(attrs.parent_doc_id)
            haystack = doc.full_text.lower()
            for kw in c.keyword_include:
                if kw.lower() not in haystack:
                    return False
            for kw in c.keyword_exclude:
                if kw.lower() in haystack:
                    return False
            if c.filter_ast is not None and not evaluate_filter(c.filter_ast, doc):
                return False
        return True

    def neighbors(self, node: str) -> Iterable[tuple[str, float]]:
        for nbr, w in self.graph.neighbors(node).items():
            if nbr in self._banned_nodes:
                continue
            if (node, nbr) in self._banned_edges or (nbr, node) in self._banned_edges:
                continue
            if self._passes_constraint(nbr):
                yield nbr, w


def subgraph_view(
    graph: SemanticGraph, constraint: PathConstraint, corpus: Corpus | None = None
) -> SubgraphView:
    return SubgraphView(graph, constraint, corpus)


def _path_result(graph: SemanticGraph, cost: EdgeCost, sequence: list[str]) -> PathResult:
    """Rebuild cost and hop similarities by walking the sequence from the start."""
    total = 0.0
    sims: list[float] = []
    for u, v in zip(sequence, sequence[1:]):
        w = graph.weight(u, v)
        sims.append(w)
        total += cost.hop_cost(w, graph.attrs(v).extract_word_count)
    return PathResult(list(sequence), total, sims)


def _dijkstra(
    view: SubgraphView,
    cost: EdgeCost,
    src: str,
    dst: str,
    max_hops: int,
) -> Optional[list[str]]:
    """Budgeted Dijkstra returning the minimal (cost, lexicographic) sequence.

    States are (node, hops) pairs; the heap is keyed on (cost, sequence) so
    the first finalization of any dst state is the answer. Expansion skips
    nodes already on the path, keeping sequences simple.
    """
    graph = view.graph
    attrs = graph.attrs
    heap: list[tuple[float, tuple[str, ...]]] = [(0.0, (src,))]
    done: set[tuple[str, int]] = set()
    while heap:
        total, seq = heapq.heappop(heap)
        node = seq[-1]
        hops = len(seq) - 1
        state = (node, hops)
        if state in done:
            continue
        done.add(state)
        if node == dst:
            return list(seq)
        if hops >= max_hops:
            continue
        on_path = set(seq)
        for nbr, w in view.neighbors(node):
            if nbr in on_path:
                continue
            if (nbr, hops + 1) in done:
                continue
            hop = cost.hop_cost(w, attrs(nbr).extract_word_count)
            heapq.heappush(heap, (total + hop, seq + (nbr,)))
    return None


def _reachable(view: SubgraphView, src: str, dst: str) -> bool:
    seen = {src}
    stack = [src]
    while stack:
        node = stack.pop()
        if node == dst:
            return True
        for nbr, _ in view.neighbors(node):
            if nbr not in seen:
                seen.add(nbr)
                stack.append(nbr)
    return False


def _check_endpoint(view: SubgraphView, node: str, label: str) -> None:
    if node not in view.graph:
        raise EndpointExcludedError(f"{label} node {node!r} is not in the graph")
    if not view.passes(node):
        raise EndpointExcludedError(f"{label} node {node!r} fails the constraint")


def shortest_path(
    graph: SemanticGraph,
    src: str,
    dst: str,
    cost: EdgeCost,
    constraint: PathConstraint = PathConstraint(),
    corpus: Corpus | None = None,
    max_hops: int = MAX_HOPS,
) -> PathResult:
    """Minimum-cost constrained path; src == dst yields the single-node path."""
    view = subgraph_view(graph, constraint, corpus)
    return _shortest_on_view(view, graph, src, dst, cost, max_hops)


def _shortest_on_view(
    view: SubgraphView,
    graph: SemanticGraph,
    src: str,
    dst: str,
    cost: EdgeCost,
    max_hops: int,
) -> PathResult:
    _check_endpoint(view, src, "source")
    _check_endpoint(view, dst, "target")
    if src == dst:
        return PathResult([src], 0.0, [])
    seq = _dijkstra(view, cost, src, dst, max_hops)
    if seq is None:
        if _reachable(view, src, dst):
            raise HopBudgetExceededError(
                f"every path from {src!r} to {dst!r} needs more than {max_hops} hops"
            )
        raise NoPathError(f"no path from {src!r} to {dst!r} in the constrained subgraph")
    return _path_result(graph, cost, seq)


def k_shortest_paths(
    graph: SemanticGraph,
    src: str,
    dst: str,
    cost: EdgeCost,
    constraint: PathConstraint = PathConstraint(),
    k: int = DEFAULT_K,
    corpus: Corpus | None = None,
    max_hops: int = MAX_HOPS,
) -> list[PathResult]:
    """Yen's k shortest loopless paths, ordered by (cost, sequence).

    Returns fewer than k when the graph holds fewer distinct simple paths
    within the hop budget.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > MAX_K:
        raise ValueError(f"k must be <= {MAX_K}")
    view = subgraph_view(graph, constraint, corpus)
    first = _shortest_on_view(view, graph, src, dst, cost, max_hops)
    accepted: list[list[str]] = [first.node_sequence]
    candidates: list[tuple[float, tuple[str, ...]]] = []
    seen_candidates: set[tuple[str, ...]] = {tuple(first.node_sequence)}

    while len(accepted) < k:
        prev = accepted[-1]
        for j in range(len(prev) - 1):
            spur_node = prev[j]
            root = prev[: j + 1]
            banned_edges = set()
            for path in accepted:
                if len(path) > j + 1 and path[: j + 1] == root:
                    banned_edges.add((path[j], path[j + 1]))
            banned_nodes = set(root[:-1])
            restricted = view.restricted(banned_nodes, banned_edges)
            if not restricted.passes(spur_node):
                continue
            spur_seq = _dijkstra(restricted, cost, spur_node, dst, max_hops - j)
            if spur_seq is None:
                continue
            candidate = tuple(root[:-1]) + tuple(spur_seq)
            if candidate in seen_candidates:
                continue
            seen_candidates.add(candidate)
            total = _path_result(graph, cost, list(candidate)).total_cost
            heapq.heappush(candidates, (total, candidate))
        if not candidates:
            break
        _, best = heapq.heappop(candidates)
        accepted.append(list(best))
    return [_path_result(graph, cost, seq) for seq in accepted]


def multi_waypoint_path(
    graph: SemanticGraph,
    waypoints: list[str],
    cost: EdgeCost,
    constraint: PathConstraint = PathConstraint(),
    per_segment_k: int = 3,
    corpus: Corpus | None = None,
    max_hops: int = MAX_HOPS,
) -> PathResult:
    """Stitch per-segment shortest paths through ordered waypoints.

    Each consecutive waypoint pair contributes up to per_segment_k candidate
    paths; combinations are tried in ascending total-cost order (ties by the
    stitched sequence) until one repeats no node besides the shared junction
    waypoints and fits the hop budget.
    """
    if len(waypoints) < 2:
        raise ValueError("need at least 2 waypoints")
    view = subgraph_view(graph, constraint, corpus)
    for i, wp in enumerate(waypoints):
        _check_endpoint(view, wp, f"waypoint {i}")

    segments: list[list[PathResult]] = []
    for a, b in zip(waypoints, waypoints[1:]):
        try:
            options = k_shortest_paths(
                graph, a, b, cost, constraint, per_segment_k, corpus, max_hops
            )
        except NoPathError:
            raise NoPathError(f"no path for segment {a!r} -> {b!r}") from None
        except HopBudgetExceededError:
            raise HopBudgetExceededError(
                f"segment {a!r} -> {b!r} exceeds the {max_hops}-hop budget"
            ) from None
        segments.append(options)

    def stitch(combo: tuple[int, ...]) -> list[str]:
        seq: list[str] = list(segments[0][combo[0]].node_sequence)
        for seg_idx in range(1, len(segments)):
            seq.extend(segments[seg_idx][combo[seg_idx]].node_sequence[1:])
        return seq

    def combo_key(combo: tuple[int, ...]) -> tuple[float, tuple[str, ...]]:
        total = sum(segments[i][c].total_cost for i, c in enumerate(combo))
        return total, tuple(stitch(combo))

    start = tuple(0 for _ in segments)
    heap = [(combo_key(start), start)]
    visited = {start}
    while heap:
        (_, _), combo = heapq.heappop(heap)
        seq = stitch(combo)
        if len(set(seq)) == len(seq) and len(seq) - 1 <= max_hops:
            return _path_result(graph, cost, seq)
        for i in range(len(segments)):
            if combo[i] + 1 < len(segments[i]):
                nxt = combo[:i] + (combo[i] + 1,) + combo[i + 1 :]
                if nxt not in visited:
                    visited.add(nxt)
                    heapq.heappush(heap, (combo_key(nxt), nxt))
    raise NoDisjointCombinationError(
        "every waypoint combination repeats a node or exceeds the hop budget"
    )
