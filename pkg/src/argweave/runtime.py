"""Shared assembly of corpus + graph + vectors into a runnable engine.

File paths resolve against ARGWEAVE_DATA_DIR when they are relative and do
not exist where given. Graphs built with the fallback provider can
regenerate their vectors straight from the corpus, so the vector file is
optional in that case.
"""

from __future__ import annotations

import os
from pathlib import Path

import numpy as np

from .annindex import IndexMode, build_index
from .casebuilder import CaseEngine
from .corpus import Corpus, Granularity, entity_view, load_corpus
from .embedding import HashedEmbedder, embed_entities, load_vectors
from .errors import ArgweaveError
from .semgraph import SemanticGraph, load_graph

ENV_DATA_DIR = "ARGWEAVE_DATA_DIR"


def data_dir() -> Path:
    return Path(os.environ.get(ENV_DATA_DIR, "argweave-data"))


def resolve_path(path: str | Path) -> Path:
    """Use the path as given when it exists; otherwise try the data dir."""
    p = Path(path)
    if p.exists() or p.is_absolute():
        return p
    candidate = data_dir() / p
    return candidate if candidate.exists() else p


def hashed_dim(provider_id: str) -> int | None:
    if provider_id.startswith("hashed-"):
        try:
            return int(provider_id.split("-", 1)[1])
        except ValueError:
            return None
    return None


def vectors_for_graph(
    corpus: Corpus, graph: SemanticGraph, vectors_path: str | Path | None = None
) -> dict[str, np.ndarray]:
    """Load vectors from file, or regenerate them for the fallback provider."""
    cfg = graph.config
    if vectors_path is not None:
        return load_vectors(resolve_path(vectors_path), expected_dim=cfg.dim)
    dim = hashed_dim(cfg.provider_id)
    if dim is None:
        raise ArgweaveError(
            f"graph was built with provider {cfg.provider_id!r}; pass its vector file"
        )
    entities = entity_view(corpus, cfg.granularity)
    return embed_entities(entities, HashedEmbedder(dim))


def engine_from_files(
    corpus_path: str | Path,
    graph_path: str | Path,
    vectors_path: str | Path | None = None,
    strict: bool = False,
) -> CaseEngine:
    corpus, _ = load_corpus(resolve_path(corpus_path), strict=strict)
    graph = load_graph(resolve_path(graph_path))
    return engine_for(corpus, graph, vectors_path)


def engine_for(
    corpus: Corpus, graph: SemanticGraph, vectors_path: str | Path | None = None
) -> CaseEngine:
    cfg = graph.config
    vectors = vectors_for_graph(corpus, graph, vectors_path)
    missing = [n for n in graph.nodes() if n not in vectors]
    if missing:
        raise ArgweaveError(
            f"{len(missing)} graph nodes have no vector (first: {missing[0]!r})"
        )
    items = sorted((n, vectors[n]) for n in graph.nodes())
    index = build_index(items, IndexMode.EXACT)
    dim = hashed_dim(cfg.provider_id)
    embedder = HashedEmbedder(dim if dim is not None else cfg.dim)
    return CaseEngine(corpus, graph, vectors, index, embedder)


def build_granularity(value: str) -> Granularity:
    return Granularity.parse(value)
