"""Turn free-text arguments plus constraints into ranked debate cases.

A case is an ordered chain of evidence entries. Each entry carries the tag
(the abstract, read slowly), the citation, the extract (speed-read aloud),
and highlight spans marking the extract tokens most similar to the previous
entry's tag, which serves as interpretability for why the chain holds
together.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .annindex import VectorIndex
from .corpus import Corpus, word_count
from .embedding import EmbeddingProvider, cosine_similarity
from .errors import EmptyQueryError, NoCandidateError
from .pathing import (
    CostKind,
    EdgeCost,
    MAX_HOPS,
    PathConstraint,
    PathResult,
    k_shortest_paths,
    multi_waypoint_path,
    subgraph_view,
)
from .semgraph import SemanticGraph

DEFAULT_TOP_FRACTION = 0.2


@dataclass(frozen=True)
class ArgumentQuery:
    text: str

    def __post_init__(self):
        if not self.text.strip():
            raise EmptyQueryError("argument query text is empty")


@dataclass
class CaseEntry:
    entity_id: str
    tag: str
    citation: str
    extract: str
    highlight_spans: list[tuple[int, int]] = field(default_factory=list)


@dataclass
class DebateCase:
    entries: list[CaseEntry]
    total_cost: float
    total_extract_words: int


def highlight_overlap(
    previous_tag_text: str,
    extract: str,
    embedder: EmbeddingProvider,
    top_fraction: float = DEFAULT_TOP_FRACTION,
) -> list[tuple[int, int]]:
    """Spans of the extract tokens most similar to the previous tag.

    Tokens are whitespace-split; the top ceil(top_fraction * n) by cosine
    against the previous tag's embedding are marked (score ties resolved
    toward earlier positions), then adjacent marked tokens merge into
    half-open (start, end) index spans.
    """
    if not (0.0 < top_fraction <= 1.0):
        raise ValueError("top_fraction must be in (0, 1]")
    tokens = extract.split()
    if not tokens:
        return []
    prev_vec = embedder.embed(previous_tag_text)
    scores = [cosine_similarity(embedder.embed(tok), prev_vec) for tok in tokens]
    take = math.ceil(top_fraction * len(tokens))
    ranked = sorted(range(len(tokens)), key=lambda i: (-scores[i], i))
    marked = sorted(ranked[:take])
    spans: list[tuple[int, int]] = []
    start = marked[0]
    prev = marked[0]
    for idx in marked[1:]:
        if idx == prev + 1:
            prev = idx
            continue
        spans.append((start, prev + 1))
        start = idx
        prev = idx
    spans.append((start, prev + 1))
    return spans


def case_word_count(case: DebateCase) -> int:
    return sum(word_count(entry.extract) for entry in case.entries)


class CaseEngine:
    """Binds the corpus, graph, vectors, index and embedder for case building."""

    def __init__(
        self,
        corpus: Corpus,
        graph: SemanticGraph,
        vectors: dict[str, np.ndarray],
        index: VectorIndex,
        embedder: EmbeddingProvider,
    ):
        self.corpus = corpus
        self.graph = graph
        self.vectors = vectors
        self.index = index
        self.embedder = embedder

    def default_cost(self, kind: CostKind = CostKind.SEMANTIC_DISTANCE, lam: float = 0.5) -> EdgeCost:
        norm = self.corpus.median_extract_words()
        return EdgeCost(kind=kind, lam=lam, norm_words=max(norm, 1.0))

    def resolve_argument(
        self, query: ArgumentQuery, constraint: PathConstraint = PathConstraint()
    ) -> tuple[str, float]:
        """Most similar constraint-passing entity; ties go to the smaller id."""
        view = subgraph_view(self.graph, constraint, self.corpus)
        q = self.embedder.embed(query.text)
        ranked = self.index.query_topk(q, self.index.size)
        for entity_id, sim in ranked:
            if entity_id in self.graph and view.passes(entity_id):
                return entity_id, sim
        raise NoCandidateError("constraint excludes every entity")

    def _entry_for(self, entity_id: str) -> CaseEntry:
        doc = self.corpus.get(self.graph.attrs(entity_id).parent_doc_id)
        return CaseEntry(
            entity_id=entity_id,
            tag=doc.abstract,
            citation=doc.citation,
            extract=doc.extract,
        )

    def _case_from_path(self, path: PathResult, top_fraction: float) -> DebateCase:
        entries = [self._entry_for(e) for e in path.node_sequence]
        for prev, entry in zip(entries, entries[1:]):
            entry.highlight_spans = highlight_overlap(
                prev.tag, entry.extract, self.embedder, top_fraction
            )
        total_words = sum(word_count(e.extract) for e in entries)
        return DebateCase(entries, path.total_cost, total_words)

    def build_case(
        self,
        start: ArgumentQuery,
        middles: list[ArgumentQuery],
        end: ArgumentQuery,
        constraint: PathConstraint = PathConstraint(),
        cost: EdgeCost | None = None,
        k: int = 1,
        top_fraction: float = DEFAULT_TOP_FRACTION,
        max_hops: int = MAX_HOPS,
    ) -> list[DebateCase]:
        """Resolve the arguments and emit cost-ordered cases along the paths.

        Without middles this returns up to k alternative chains; with middles
        the stitched waypoint path yields a single case.
        """
        if cost is None:
            cost = self.default_cost()
        start_id, _ = self.resolve_argument(start, constraint)
        end_id, _ = self.resolve_argument(end, constraint)
        middle_ids = [self.resolve_argument(m, constraint)[0] for m in middles]
        if middle_ids:
            path = multi_waypoint_path(
                self.graph,
                [start_id, *middle_ids, end_id],
                cost,
                constraint,
                corpus=self.corpus,
                max_hops=max_hops,
            )
            paths = [path]
        else:
            paths = k_shortest_paths(
                self.graph,
                start_id,
                end_id,
                cost,
                constraint,
                k,
                corpus=self.corpus,
                max_hops=max_hops,
            )
        cases = [self._case_from_path(p, top_fraction) for p in paths]
        cases.sort(key=lambda c: (c.total_cost, [e.entity_id for e in c.entries]))
        return cases
