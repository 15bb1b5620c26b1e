from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import pytest

from argweave.annindex import IndexMode, build_index
from argweave.casebuilder import CaseEngine
from argweave.corpus import Corpus, EvidenceDoc, Granularity, load_corpus, word_count
from argweave.semgraph import GraphConfig, SemanticGraph

REPO_ROOT = Path(__file__).resolve().parents[1]
FIXTURES = REPO_ROOT / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "golden"


@pytest.fixture(scope="session")
def mini_corpus_path() -> Path:
    return FIXTURES / "mini_corpus.jsonl"


@pytest.fixture(scope="session")
def eval_pairs_path() -> Path:
    return FIXTURES / "eval_pairs.jsonl"


@pytest.fixture(scope="session")
def mini_corpus(mini_corpus_path) -> Corpus:
    corpus, report = load_corpus(mini_corpus_path)
    assert report.rejected == 0
    return corpus


def make_doc(
    doc_id: str,
    abstract: str = "An argument sentence.",
    extract: str = "An extract of evidence text.",
    full_text: str | None = None,
    camp: str = "Gonzaga",
    arg_type: str = "Affirmative",
    year: int = 2013,
    citation: str = "Author 13",
) -> EvidenceDoc:
    if full_text is None:
        full_text = f"{abstract} {extract}"
    return EvidenceDoc(
        doc_id=doc_id,
        full_text=full_text,
        extract=extract,
        abstract=abstract,
        citation=citation,
        camp=camp,
        arg_type=arg_type,
        year=year,
        word_count_full=word_count(full_text),
        word_count_extract=word_count(extract),
    )


def write_jsonl(path: Path, records: list[dict]) -> Path:
    with path.open("w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec) + "\n")
    return path


def corpus_record(
    doc_id: str,
    abstract: str = "An argument sentence.",
    extract: str = "An extract of evidence text.",
    **overrides,
) -> dict:
    rec = {
        "id": doc_id,
        "fullDocument": f"{abstract} {extract}",
        "extract": extract,
        "abstract": abstract,
        "citation": "Author 13",
        "camp": "Gonzaga",
        "tag": "Affirmative",
        "year": 2013,
    }
    rec.update(overrides)
    return rec


class StubEmbedder:
    """Maps known texts to fixed vectors; unknown texts embed to zero."""

    def __init__(self, mapping: dict[str, np.ndarray], dim: int):
        self.mapping = {k: np.asarray(v, dtype=np.float32) for k, v in mapping.items()}
        self.dim = dim
        self.provider_id = f"stub-{dim}"

    def embed(self, text: str) -> np.ndarray:
        vec = self.mapping.get(text)
        if vec is None:
            return np.zeros(self.dim, dtype=np.float32)
        return vec


def graph_from_edges(
    nodes: dict[str, int],
    edges: list[tuple[str, str, float]],
    threshold: float = 0.01,
) -> SemanticGraph:
    """Directly assembled graph; node value is its extract word count."""
    cfg = GraphConfig(
        granularity=Granularity.ABSTRACT,
        provider_id="stub-4",
        dim=4,
        similarity_threshold=threshold,
        edge_limit=100,
    )
    g = SemanticGraph(cfg)
    for node, words in nodes.items():
        g.add_node(node, f"doc-{node}", words)
    for u, v, w in edges:
        g.add_edge(u, v, w)
    return g
