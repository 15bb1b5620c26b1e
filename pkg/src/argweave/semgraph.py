"""The semantic knowledge graph: construction, analytics, persistence.

Nodes are entity ids; undirected edges carry cosine similarity as weight.
Every node selects its ``edge_limit`` nearest neighbors and keeps those at or
above ``similarity_threshold``, so a node's *selections* are bounded while
its total degree may grow through incoming selections from other nodes.

Community detection is a deterministic weighted Louvain (fixed node order,
smallest-community-id tie break); centrality is weighted PageRank with
dangling-mass redistribution. Graphs persist to a versioned little-endian
binary file with a CRC32 trailer; embeddings are not stored in it, only the
provider id and dimension needed to find the matching vector file.
"""

from __future__ import annotations

import struct
import zlib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from .annindex import VectorIndex
from .corpus import Corpus, Entity, Granularity
from .errors import GraphFormatError, MissingVectorError

GRAPH_MAGIC = b"AWKG"
GRAPH_VERSION = 0x01

DEFAULT_SIMILARITY_THRESHOLD = 0.10
DEFAULT_EDGE_LIMIT = 100

_GRANULARITY_BYTE = {
    Granularity.ABSTRACT: 0,
    Granularity.EXTRACT: 1,
    Granularity.SENTENCE: 2,
}
_BYTE_GRANULARITY = {v: k for k, v in _GRANULARITY_BYTE.items()}


@dataclass(frozen=True)
class GraphConfig:
    granularity: Granularity
    provider_id: str
    dim: int
    similarity_threshold: float = DEFAULT_SIMILARITY_THRESHOLD
    edge_limit: int = DEFAULT_EDGE_LIMIT

    def __post_init__(self):
        if not (0.0 < self.similarity_threshold <= 1.0):
            raise ValueError("similarity_threshold must be in (0, 1]")
        if self.edge_limit < 1:
            raise ValueError("edge_limit must be >= 1")


@dataclass
class NodeAttrs:
    parent_doc_id: str
    extract_word_count: int
    community_id: int | None = None


@dataclass(frozen=True)
class GraphStats:
    vertex_count: int
    edge_count: int
    average_degree: float


@dataclass
class CommunityAssignment:
    communities: dict[str, int]
    modularity: float


@dataclass
class PageRankResult:
    scores: dict[str, float]
    iterations: int
    converged: bool


class SemanticGraph:
    """Undirected weighted graph over entities.

    Mutation happens during build only; afterwards the graph is treated as
    immutable and is safe for concurrent traversal.
    """

    def __init__(self, config: GraphConfig):
        self.config = config
        self._adj: dict[str, dict[str, float]] = {}
        self._attrs: dict[str, NodeAttrs] = {}

    # -- construction ------------------------------------------------------

    def add_node(self, entity_id: str, parent_doc_id: str, extract_word_count: int) -> None:
        if entity_id not in self._adj:
            self._adj[entity_id] = {}
            self._attrs[entity_id] = NodeAttrs(parent_doc_id, extract_word_count)

    def add_edge(self, u: str, v: str, weight: float) -> None:
        if u == v:
            raise ValueError("self-loops are not allowed")
        if u not in self._adj or v not in self._adj:
            raise KeyError("both endpoints must be nodes")
        existing = self._adj[u].get(v)
        if existing is not None:
            if abs(existing - weight) > 1e-6:
                raise ValueError(
                    f"duplicate edge {u!r}-{v!r} with diverging weights "
                    f"{existing} vs {weight}"
                )
            return
        self._adj[u][v] = weight
        self._adj[v][u] = weight

    # -- reads ---------------------------------------------------------------

    def __contains__(self, entity_id: str) -> bool:
        return entity_id in self._adj

    def nodes(self) -> list[str]:
        return list(self._adj)

    def node_count(self) -> int:
        return len(self._adj)

    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self._adj.values()) // 2

    def edges(self) -> Iterator[tuple[str, str, float]]:
        for u, nbrs in self._adj.items():
            for v, w in nbrs.items():
                if u < v:
                    yield u, v, w

    def neighbors(self, u: str) -> dict[str, float]:
        return self._adj[u]

    def weight(self, u: str, v: str) -> float:
        return self._adj[u][v]

    def has_edge(self, u: str, v: str) -> bool:
        return v in self._adj.get(u, ())

    def attrs(self, entity_id: str) -> NodeAttrs:
        return self._attrs[entity_id]

    def set_communities(self, assignment: CommunityAssignment) -> None:
        for node, community in assignment.communities.items():
            self._attrs[node].community_id = community

    def structurally_equal(self, other: "SemanticGraph") -> bool:
        if self.config != other.config:
            return False
        if set(self._adj) != set(other._adj):
            return False
        for node, attrs in self._attrs.items():
            if attrs != other._attrs[node]:
                return False
        return dict_of_edges(self) == dict_of_edges(other)


def dict_of_edges(graph: SemanticGraph) -> dict[tuple[str, str], float]:
    return {(u, v): w for u, v, w in graph.edges()}


def build_graph(
    entities: Iterable[Entity],
    vectors: dict[str, np.ndarray],
    index: VectorIndex,
    config: GraphConfig,
    corpus: Corpus | None = None,
) -> SemanticGraph:
    """Connect each entity to its nearest neighbors above the threshold.

    The neighbor query is capped at ``edge_limit`` per node and the threshold
    is applied to its results, so the per-node cap counts candidates, not
    survivors. Isolated nodes are kept. Symmetric duplicates must agree on
    weight within 1e-6.

    Weights are quantized to float32 before the threshold test; the graph
    file stores float32, so quantizing here keeps persisted graphs bit-exact
    round-trips of the in-memory ones.
    """
    graph = SemanticGraph(config)
    entity_list = list(entities)
    for entity in entity_list:
        if entity.entity_id not in vectors:
            raise MissingVectorError(f"no vector for entity {entity.entity_id!r}")
        words = 0
        if corpus is not None and entity.parent_doc_id in corpus:
            words = corpus.get(entity.parent_doc_id).word_count_extract
        graph.add_node(entity.entity_id, entity.parent_doc_id, words)
    for entity in entity_list:
        q = vectors[entity.entity_id]
        for neighbor_id, sim in index.query_topk(q, config.edge_limit, exclude=entity.entity_id):
            w = float(np.float32(sim))
            if w >= config.similarity_threshold:
                graph.add_edge(entity.entity_id, neighbor_id, w)
    return graph


# -- Louvain community detection --------------------------------------------


def _partition_modularity(
    adj: list[dict[int, float]],
    loops: list[float],
    community: list[int],
    resolution: float,
) -> float:
    """Modularity of a partition on the internal (adjacency, self-loop) form.

    loops[u] holds the already double-counted self-loop mass, so degrees are
    k_u = loops[u] + sum of incident edge weights and 2m = sum of degrees.
    """
    degrees = [loops[u] + sum(adj[u].values()) for u in range(len(adj))]
    two_m = sum(degrees)
    if two_m == 0.0:
        return 0.0
    internal: dict[int, float] = {}
    total: dict[int, float] = {}
    for u in range(len(adj)):
        c = community[u]
        internal[c] = internal.get(c, 0.0) + loops[u]
        total[c] = total.get(c, 0.0) + degrees[u]
        for v, w in adj[u].items():
            if community[v] == c:
                internal[c] += w  # each intra edge counted from both ends
    q = 0.0
    for c in internal:
        q += internal[c] / two_m - resolution * (total[c] / two_m) ** 2
    return q


def modularity(
    graph: SemanticGraph, communities: dict[str, int], resolution: float = 1.0
) -> float:
    """Weighted modularity of an assignment on the graph."""
    order = sorted(graph.nodes())
    pos = {node: i for i, node in enumerate(order)}
    adj: list[dict[int, float]] = [dict() for _ in order]
    for node in order:
        u = pos[node]
        for nbr, w in sorted(graph.neighbors(node).items()):
            adj[u][pos[nbr]] = w
    labels = sorted(set(communities.values()))
    dense = {c: i for i, c in enumerate(labels)}
    community = [dense[communities[node]] for node in order]
    return _partition_modularity(adj, [0.0] * len(order), community, resolution)


def _louvain_one_level(
    adj: list[dict[int, float]],
    loops: list[float],
    resolution: float,
) -> list[int]:
    """One local-moving phase; returns the community of each node."""
    n = len(adj)
    degrees = [loops[u] + sum(adj[u].values()) for u in range(n)]
    two_m = sum(degrees)
    if two_m == 0.0:
        return list(range(n))
    m = two_m / 2.0
    community = list(range(n))
    comm_total = degrees[:]  # total degree per community label

    improved = True
    while improved:
        improved = False
        for u in range(n):
            cur = community[u]
            k_u = degrees[u]
            # weight from u to each neighboring community
            link: dict[int, float] = {}
            for v, w in adj[u].items():
                c = community[v]
                link[c] = link.get(c, 0.0) + w
            comm_total[cur] -= k_u
            base_gain = link.get(cur, 0.0) / m - resolution * comm_total[cur] * k_u / (
                2.0 * m * m
            )
            best_comm = cur
            best_gain = base_gain
            for c in sorted(link):
                if c == cur:
                    continue
                gain = link[c] / m - resolution * comm_total[c] * k_u / (2.0 * m * m)
                if gain > best_gain:
                    best_gain = gain
                    best_comm = c
            comm_total[best_comm] += k_u
            if best_comm != cur:
                community[u] = best_comm
                improved = True
    return community


def _aggregate(
    adj: list[dict[int, float]],
    loops: list[float],
    community: list[int],
) -> tuple[list[dict[int, float]], list[float], dict[int, int]]:
    """Collapse communities into super-nodes, preserving modularity."""
    labels = sorted(set(community))
    relabel = {c: i for i, c in enumerate(labels)}
    size = len(labels)
    new_adj: list[dict[int, float]] = [dict() for _ in range(size)]
    new_loops = [0.0] * size
    for u in range(len(adj)):
        cu = relabel[community[u]]
        new_loops[cu] += loops[u]
        for v, w in adj[u].items():
            cv = relabel[community[v]]
            if cu == cv:
                new_loops[cu] += w  # both directions of the pair land here
            elif u < v:
                new_adj[cu][cv] = new_adj[cu].get(cv, 0.0) + w
                new_adj[cv][cu] = new_adj[cv].get(cu, 0.0) + w
    return new_adj, new_loops, relabel


def louvain_communities(graph: SemanticGraph, resolution: float = 1.0) -> CommunityAssignment:
    """Deterministic weighted Louvain.

    Phase 1 moves nodes in ascending entity-id order to the neighbor
    community with the largest positive modularity gain (ties -> smallest
    community id); phase 2 aggregates and repeats until the modularity
    improvement of a full level drops below 1e-7.
    """
    order = sorted(graph.nodes())
    if not order:
        return CommunityAssignment({}, 0.0)
    pos = {node: i for i, node in enumerate(order)}
    adj: list[dict[int, float]] = [dict() for _ in order]
    for node in order:
        u = pos[node]
        for nbr, w in sorted(graph.neighbors(node).items()):
            adj[u][pos[nbr]] = w
    loops = [0.0] * len(order)

    # node index in the original graph -> community label in the working graph
    membership = list(range(len(order)))
    current_q = _partition_modularity(adj, loops, list(range(len(adj))), resolution)
    while True:
        level_comm = _louvain_one_level(adj, loops, resolution)
        new_q = _partition_modularity(adj, loops, level_comm, resolution)
        if new_q - current_q < 1e-7:
            break
        current_q = new_q
        adj, loops, relabel = _aggregate(adj, loops, level_comm)
        membership = [relabel[level_comm[c]] for c in membership]
        if len(adj) == 1:
            break

    # densify: communities numbered by the smallest entity id they contain
    first_seen: dict[int, int] = {}
    for i in range(len(order)):
        c = membership[i]
        if c not in first_seen:
            first_seen[c] = len(first_seen)
    communities = {order[i]: first_seen[membership[i]] for i in range(len(order))}
    final_q = modularity(graph, communities, resolution) if graph.edge_count() else 0.0
    return CommunityAssignment(communities, final_q)


# -- PageRank ----------------------------------------------------------------


def pagerank(
    graph: SemanticGraph,
    damping: float = 0.85,
    tol: float = 1e-8,
    max_iter: int = 100,
) -> PageRankResult:
    """Weighted PageRank; transition probability proportional to edge weight.

    Nodes without edges spread their mass uniformly. Iterates until the L1
    change drops below tol; a non-converged run returns the last iterate
    with converged=False.
    """
    nodes = sorted(graph.nodes())
    n = len(nodes)
    if n == 0:
        return PageRankResult({}, 0, True)
    strength = {u: sum(graph.neighbors(u).values()) for u in nodes}
    scores = {u: 1.0 / n for u in nodes}
    iterations = 0
    converged = False
    for iterations in range(1, max_iter + 1):
        dangling = sum(scores[u] for u in nodes if strength[u] == 0.0)
        base = (1.0 - damping) / n + damping * dangling / n
        nxt = {u: base for u in nodes}
        for u in nodes:
            s = strength[u]
            if s == 0.0:
                continue
            share = damping * scores[u] / s
            for v, w in sorted(graph.neighbors(u).items()):
                nxt[v] += share * w
        delta = sum(abs(nxt[u] - scores[u]) for u in nodes)
        scores = nxt
        if delta < tol:
            converged = True
            break
    return PageRankResult(scores, iterations, converged)


# -- stats -------------------------------------------------------------------


def graph_stats(graph: SemanticGraph) -> GraphStats:
    v = graph.node_count()
    e = graph.edge_count()
    avg = (2.0 * e / v) if v else 0.0
    return GraphStats(v, e, avg)


def format_stats_table(rows: list[tuple[str, GraphStats]]) -> str:
    """Aligned report with vertex/edge/average-degree columns per graph."""
    header = ("Graph", "Number of Vertices", "Number of Edges", "Average Degree")
    table = [header] + [
        (name, str(s.vertex_count), str(s.edge_count), f"{s.average_degree:.2f}")
        for name, s in rows
    ]
    widths = [max(len(r[i]) for r in table) for i in range(4)]
    lines = []
    for r in table:
        lines.append(
            "  ".join(col.ljust(widths[i]) if i == 0 else col.rjust(widths[i]) for i, col in enumerate(r))
        )
    return "\n".join(lines)


# -- persistence ---------------------------------------------------------------


def _pack_str(value: str) -> bytes:
    raw = value.encode("utf-8")
    if len(raw) > 0xFFFF:
        raise GraphFormatError("string field too long")
    return struct.pack("<H", len(raw)) + raw


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, n: int, what: str) -> bytes:
        if self.pos + n > len(self.data):
            raise GraphFormatError(f"truncated graph file while reading {what}")
        out = self.data[self.pos : self.pos + n]
        self.pos += n
        return out

    def unpack(self, fmt: str, what: str):
        size = struct.calcsize(fmt)
        return struct.unpack(fmt, self.take(size, what))

    def take_str(self, what: str) -> str:
        (length,) = self.unpack("<H", what)
        return self.take(length, what).decode("utf-8")


def persist_graph(graph: SemanticGraph, path: str | Path) -> None:
    """Write the versioned binary graph file with CRC32 trailer.

    Nodes are written sorted by entity id and edges sorted by their node
    index pair, so identical graphs always produce identical bytes.
    """
    cfg = graph.config
    out = bytearray()
    out += GRAPH_MAGIC
    out += struct.pack("<B", GRAPH_VERSION)
    out += struct.pack("<d", cfg.similarity_threshold)
    out += struct.pack("<I", cfg.edge_limit)
    out += struct.pack("<B", _GRANULARITY_BYTE[cfg.granularity])
    out += _pack_str(cfg.provider_id)
    out += struct.pack("<I", cfg.dim)

    nodes = sorted(graph.nodes())
    pos = {node: i for i, node in enumerate(nodes)}
    out += struct.pack("<Q", len(nodes))
    for node in nodes:
        attrs = graph.attrs(node)
        out += _pack_str(node)
        out += _pack_str(attrs.parent_doc_id)
        out += struct.pack("<I", attrs.extract_word_count)
        out += struct.pack("<i", -1 if attrs.community_id is None else attrs.community_id)

    edges = sorted(
        ((pos[u], pos[v]) if pos[u] < pos[v] else (pos[v], pos[u]), w)
        for u, v, w in graph.edges()
    )
    out += struct.pack("<Q", len(edges))
    for (i, j), w in edges:
        out += struct.pack("<IIf", i, j, np.float32(w))
    out += struct.pack("<I", zlib.crc32(bytes(out)))
    Path(path).write_bytes(bytes(out))


def load_graph(path: str | Path) -> SemanticGraph:
    data = Path(path).read_bytes()
    if len(data) < 4:
        raise GraphFormatError("file too short for magic")
    if data[:4] != GRAPH_MAGIC:
        raise GraphFormatError(f"bad magic {data[:4]!r}, expected {GRAPH_MAGIC!r}")
    if len(data) < 9:
        raise GraphFormatError("truncated graph file")
    (stored_crc,) = struct.unpack("<I", data[-4:])
    actual_crc = zlib.crc32(data[:-4])
    if stored_crc != actual_crc:
        raise GraphFormatError(
            f"checksum mismatch: stored {stored_crc:#010x}, computed {actual_crc:#010x}"
        )
    r = _Reader(data[:-4])
    r.take(4, "magic")
    (version,) = r.unpack("<B", "version")
    if version != GRAPH_VERSION:
        raise GraphFormatError(f"unknown version byte 0x{version:02x}")
    (threshold,) = r.unpack("<d", "threshold")
    (edge_limit,) = r.unpack("<I", "edge limit")
    (gbyte,) = r.unpack("<B", "granularity")
    if gbyte not in _BYTE_GRANULARITY:
        raise GraphFormatError(f"unknown granularity byte {gbyte}")
    provider_id = r.take_str("provider id")
    (dim,) = r.unpack("<I", "dim")
    config = GraphConfig(
        granularity=_BYTE_GRANULARITY[gbyte],
        provider_id=provider_id,
        dim=dim,
        similarity_threshold=threshold,
        edge_limit=edge_limit,
    )
    graph = SemanticGraph(config)
    (node_count,) = r.unpack("<Q", "node count")
    nodes: list[str] = []
    for i in range(node_count):
        entity_id = r.take_str(f"node {i} id")
        parent = r.take_str(f"node {i} parent")
        (words,) = r.unpack("<I", f"node {i} words")
        (community,) = r.unpack("<i", f"node {i} community")
        graph.add_node(entity_id, parent, words)
        if community >= 0:
            graph.attrs(entity_id).community_id = community
        nodes.append(entity_id)
    (edge_count,) = r.unpack("<Q", "edge count")
    for i in range(edge_count):
        a, b, w = r.unpack("<IIf", f"edge {i}")
        if a >= node_count or b >= node_count:
            raise GraphFormatError(f"edge {i} references unknown node index")
        graph.add_edge(nodes[a], nodes[b], float(w))
    if r.pos != len(r.data):
        raise GraphFormatError("trailing bytes before checksum")
    return graph
