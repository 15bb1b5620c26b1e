"""Independent brute-force oracles the implementation is checked against.

These deliberately share no code with the library's search and build paths:
path enumeration is plain DFS, graph-build is a full similarity matrix with
per-row sorting, and modularity maximization enumerates set partitions.
"""

from __future__ import annotations

import numpy as np

from argweave.embedding import cosine_similarity
from argweave.pathing import EdgeCost, PathConstraint, subgraph_view
from argweave.semgraph import SemanticGraph


def enumerate_simple_paths(
    graph: SemanticGraph,
    src: str,
    dst: str,
    constraint: PathConstraint = PathConstraint(),
    corpus=None,
    max_hops: int | None = None,
) -> list[list[str]]:
    """All simple constraint-satisfying paths src -> dst, by DFS."""
    view = subgraph_view(graph, constraint, corpus)
    if not (view.passes(src) and view.passes(dst)):
        return []
    if src == dst:
        return [[src]]
    out: list[list[str]] = []

    def dfs(node: str, path: list[str]):
        if max_hops is not None and len(path) - 1 >= max_hops:
            return
        for nbr in sorted(graph.neighbors(node)):
            if nbr in path:
                continue
            if not view.passes(nbr):
                continue
            if nbr == dst:
                out.append(path + [nbr])
            else:
                dfs(nbr, path + [nbr])

    dfs(src, [src])
    return out


def path_cost(graph: SemanticGraph, cost: EdgeCost, seq: list[str]) -> float:
    """Sequential accumulation from the source, mirroring how a walker pays."""
    total = 0.0
    for u, v in zip(seq, seq[1:]):
        total += cost.hop_cost(graph.weight(u, v), graph.attrs(v).extract_word_count)
    return total


def brute_force_k_shortest(
    graph: SemanticGraph,
    src: str,
    dst: str,
    cost: EdgeCost,
    k: int,
    constraint: PathConstraint = PathConstraint(),
    corpus=None,
    max_hops: int | None = None,
) -> list[tuple[float, list[str]]]:
    paths = enumerate_simple_paths(graph, src, dst, constraint, corpus, max_hops)
    ranked = sorted(((path_cost(graph, cost, p), p) for p in paths), key=lambda t: (t[0], t[1]))
    return ranked[:k]


def brute_force_edges(
    ids: list[str],
    vectors: dict[str, np.ndarray],
    threshold: float,
    limit: int,
) -> set[tuple[str, str]]:
    """Edge set from the definition: per-node top-limit, then threshold.

    Candidate ranking is (descending similarity, ascending id); weights are
    float32-quantized before the threshold test, matching the engine's
    storage quantization.
    """
    edges: set[tuple[str, str]] = set()
    for a in ids:
        sims = []
        for b in ids:
            if a == b:
                continue
            sims.append((cosine_similarity(vectors[a], vectors[b]), b))
        sims.sort(key=lambda t: (-t[0], t[1]))
        for sim, b in sims[:limit]:
            if float(np.float32(sim)) >= threshold:
                edges.add((min(a, b), max(a, b)))
    return edges


def all_partitions(items: list[str]):
    """Every set partition of items (Bell-number many; keep items small)."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partition in all_partitions(rest):
        for i in range(len(partition)):
            yield partition[:i] + [[first] + partition[i]] + partition[i + 1 :]
        yield [[first]] + partition


def naive_modularity(
    graph: SemanticGraph, communities: dict[str, int], resolution: float = 1.0
) -> float:
    """Textbook double sum over ordered node pairs: no shared code with Louvain."""
    nodes = sorted(graph.nodes())
    degree = {u: sum(graph.neighbors(u).values()) for u in nodes}
    two_m = sum(degree.values())
    if two_m == 0.0:
        return 0.0
    q = 0.0
    for u in nodes:
        for v in nodes:
            if communities[u] != communities[v]:
                continue
            a_uv = graph.weight(u, v) if graph.has_edge(u, v) else 0.0
            q += a_uv - resolution * degree[u] * degree[v] / two_m
    return q / two_m


def brute_force_best_modularity(graph: SemanticGraph, resolution: float = 1.0):
    """Max-modularity partition by exhaustive enumeration."""
    nodes = sorted(graph.nodes())
    best_q = None
    best = None
    for partition in all_partitions(nodes):
        assignment = {}
        for cid, block in enumerate(partition):
            for node in block:
                assignment[node] = cid
        q = naive_modularity(graph, assignment, resolution)
        if best_q is None or q > best_q + 1e-12:
            best_q = q
            best = partition
    return best_q, best


def blocks_of(communities: dict[str, int]) -> set[frozenset[str]]:
    groups: dict[int, set[str]] = {}
    for node, cid in communities.items():
        groups.setdefault(cid, set()).add(node)
    return {frozenset(v) for v in groups.values()}
