#!/usr/bin/env python3
"""Regenerate the golden regression artifacts in tests/golden/.

Runs the full pipeline over the bundled fixture corpus with the fallback
embedder and default graph settings, then freezes the persisted graph bytes,
the 10-pair evaluation report, and one fully rendered case. The regression
test rebuilds all three in-process and compares byte for byte, so only
rerun this script after an intentional behavior change.
"""

from __future__ import annotations

from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]

from argweave.annindex import IndexMode, build_index
from argweave.casebuilder import ArgumentQuery, CaseEngine
from argweave.corpus import Granularity, entity_view, load_corpus
from argweave.embedding import HashedEmbedder, embed_entities, save_vectors
from argweave.evalharness import evaluate_graph, format_report, load_pairs
from argweave.rendering import render_case_text
from argweave.semgraph import GraphConfig, build_graph, louvain_communities, persist_graph

GOLDEN = ROOT / "tests" / "golden"
DIM = 256


def build_engine():
    corpus, _ = load_corpus(ROOT / "fixtures" / "mini_corpus.jsonl")
    entities = entity_view(corpus, Granularity.ABSTRACT)
    embedder = HashedEmbedder(DIM)
    vectors = embed_entities(entities, embedder)
    index = build_index(sorted(vectors.items()), IndexMode.EXACT)
    config = GraphConfig(
        granularity=Granularity.ABSTRACT, provider_id=embedder.provider_id, dim=DIM
    )
    graph = build_graph(entities, vectors, index, config, corpus)
    graph.set_communities(louvain_communities(graph))
    return CaseEngine(corpus, graph, vectors, index, embedder)


def main() -> None:
    GOLDEN.mkdir(parents=True, exist_ok=True)
    engine = build_engine()

    persist_graph(engine.graph, GOLDEN / "mini_graph.awkg")
    save_vectors(GOLDEN / "mini_vectors.awev", engine.vectors, DIM)

    pairs = load_pairs(ROOT / "fixtures" / "eval_pairs.jsonl")
    row = evaluate_graph(engine, pairs, graph_name="mini-hashed-abs")
    report = format_report([row]) + "\n"
    (GOLDEN / "eval_report.txt").write_text(report, encoding="utf-8")

    start, end = pairs[0]
    cases = engine.build_case(ArgumentQuery(start), [], ArgumentQuery(end), k=1)
    rendered = render_case_text(cases[0], markers=True) + "\n"
    (GOLDEN / "case_render.txt").write_text(rendered, encoding="utf-8")

    print(f"wrote goldens under {GOLDEN}")
    print(report)


if __name__ == "__main__":
    main()
