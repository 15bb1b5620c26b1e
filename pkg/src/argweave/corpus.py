"""Evidence corpus loading and granularity views.

The corpus is a JSONL file, one document per line:

    {"id": str, "fullDocument": str, "extract": str, "abstract": str,
     "citation": str, "camp": str, "tag": str, "year": int}

``tag`` holds the argument type (e.g. "Counterplan Answers") and maps to
``arg_type``. Unknown keys are ignored. Word counts are always recomputed
from the text on ingest; stored values are overridden.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Iterator

from .errors import CorpusError, DuplicateDocIdError

log = logging.getLogger(__name__)

# Tokens exempt from the end-of-sentence rule when they precede whitespace
# plus an uppercase letter.
ABBREVIATIONS = ("Dr.", "Mr.", "Ms.", "U.S.", "etc.", "e.g.", "i.e.", "vs.")

_TERMINATORS = ".?!"


class Granularity(Enum):
    """Which text unit becomes a graph entity."""

    ABSTRACT = "abstract"
    EXTRACT = "extract"
    SENTENCE = "sentence"

    @classmethod
    def parse(cls, value: str) -> "Granularity":
        try:
            return cls(value.lower())
        except ValueError:
            raise CorpusError(f"unknown granularity {value!r}") from None


_GRANULARITY_CODE = {
    Granularity.ABSTRACT: "abs",
    Granularity.EXTRACT: "ext",
    Granularity.SENTENCE: "sent",
}


def word_count(text: str) -> int:
    """Number of whitespace-separated tokens."""
    return len(text.split())


@dataclass(frozen=True)
class EvidenceDoc:
    """One corpus document with its summaries and camp/tag/year metadata."""

    doc_id: str
    full_text: str
    extract: str
    abstract: str
    citation: str
    camp: str
    arg_type: str
    year: int
    word_count_full: int
    word_count_extract: int


@dataclass(frozen=True)
class Entity:
    """One graph node candidate at a fixed granularity."""

    entity_id: str
    parent_doc_id: str
    granularity: Granularity
    ordinal: int
    text: str


def entity_id_for(parent_doc_id: str, granularity: Granularity, ordinal: int) -> str:
    """Deterministic id; zero-padded ordinal keeps lexicographic == positional order."""
    return f"{parent_doc_id}::{_GRANULARITY_CODE[granularity]}::{ordinal:04d}"


@dataclass
class IngestReport:
    loaded: int = 0
    rejected: int = 0
    reasons: dict[str, int] = field(default_factory=dict)

    def reject(self, reason: str) -> None:
        self.rejected += 1
        self.reasons[reason] = self.reasons.get(reason, 0) + 1

    def to_dict(self) -> dict:
        return {"loaded": self.loaded, "rejected": self.rejected, "reasons": dict(self.reasons)}


class Corpus:
    """Immutable document collection; safe for concurrent readers after load."""

    def __init__(self, docs: list[EvidenceDoc]):
        self._docs = list(docs)
        self._by_id = {d.doc_id: d for d in self._docs}

    def __len__(self) -> int:
        return len(self._docs)

    def __iter__(self) -> Iterator[EvidenceDoc]:
        return iter(self._docs)

    def get(self, doc_id: str) -> EvidenceDoc:
        return self._by_id[doc_id]

    def __contains__(self, doc_id: str) -> bool:
        return doc_id in self._by_id

    def median_extract_words(self) -> float:
        """Median of per-doc extract word counts (mean of middle two when even)."""
        counts = sorted(d.word_count_extract for d in self._docs)
        if not counts:
            return 1.0
        mid = len(counts) // 2
        if len(counts) % 2 == 1:
            return float(counts[mid])
        return (counts[mid - 1] + counts[mid]) / 2.0


_REQUIRED_KEYS = ("id", "fullDocument", "extract", "abstract", "citation", "camp", "tag", "year")


def _parse_record(obj: dict) -> EvidenceDoc:
    for key in _REQUIRED_KEYS:
        if key not in obj:
            raise ValueError(f"missing key {key!r}")
    if not isinstance(obj["year"], int) or isinstance(obj["year"], bool):
        raise ValueError("year must be an integer")
    for key in ("id", "fullDocument", "extract", "abstract", "citation", "camp", "tag"):
        if not isinstance(obj[key], str):
            raise ValueError(f"{key} must be a string")
    return EvidenceDoc(
        doc_id=obj["id"],
        full_text=obj["fullDocument"],
        extract=obj["extract"],
        abstract=obj["abstract"],
        citation=obj["citation"],
        camp=obj["camp"],
        arg_type=obj["tag"],
        year=obj["year"],
        word_count_full=word_count(obj["fullDocument"]),
        word_count_extract=word_count(obj["extract"]),
    )


def load_corpus(path: str | Path, strict: bool = False) -> tuple[Corpus, IngestReport]:
    """Load a JSONL corpus file.

    Records with empty ``abstract`` or ``extract`` are rejected (counted in the
    report). In strict mode any malformed record aborts the load. A duplicate
    doc id always aborts, strict or not.
    """
    path = Path(path)
    if not path.is_file():
        raise CorpusError(f"corpus file not found: {path}")

    docs: list[EvidenceDoc] = []
    seen: set[str] = set()
    report = IngestReport()
    with path.open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
                if not isinstance(obj, dict):
                    raise ValueError("record is not an object")
                doc = _parse_record(obj)
            except (ValueError, json.JSONDecodeError) as exc:
                if strict:
                    raise CorpusError(f"line {lineno}: malformed record: {exc}") from None
                log.warning("rejecting line %d: malformed record: %s", lineno, exc)
                report.reject(f"malformed: {exc}")
                continue
            if doc.doc_id in seen:
                raise DuplicateDocIdError(f"line {lineno}: duplicate doc_id {doc.doc_id!r}")
            seen.add(doc.doc_id)
            if not doc.abstract.strip():
                log.warning("rejecting %s (line %d): empty abstract", doc.doc_id, lineno)
                report.reject("empty abstract")
                continue
            if not doc.extract.strip():
                log.warning("rejecting %s (line %d): empty extract", doc.doc_id, lineno)
                report.reject("empty extract")
                continue
            docs.append(doc)
            report.loaded += 1
    return Corpus(docs), report


def _is_abbreviation(text: str, dot_index: int) -> bool:
    token_start = dot_index
    while token_start > 0 and not text[token_start - 1].isspace():
        token_start -= 1
    token = text[token_start : dot_index + 1]
    # Leading quotes/brackets are not part of the word.
    token = token.lstrip("\"'([{")
    return token in ABBREVIATIONS


def segment_sentences(text: str) -> list[str]:
    """Split text into sentences.

    A sentence ends at '.', '?' or '!' followed by whitespace and an uppercase
    letter, or at end of text. Tokens in ABBREVIATIONS never end a sentence.
    Returned sentences are stripped and non-empty; each is a contiguous
    substring of the input.
    """
    sentences: list[str] = []
    start = 0
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in _TERMINATORS:
            j = i + 1
            while j < n and text[j].isspace():
                j += 1
            boundary = False
            if j == n:
                boundary = True
            elif j > i + 1 and text[j].isupper():
                boundary = not (ch == "." and _is_abbreviation(text, i))
            if boundary:
                piece = text[start : i + 1].strip()
                if piece:
                    sentences.append(piece)
                start = j
                i = j
                continue
        i += 1
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences


def entity_view(corpus: Corpus, granularity: Granularity) -> list[Entity]:
    """Materialize the entity list for a granularity.

    ABSTRACT/EXTRACT produce one entity per document; SENTENCE one per
    sentence of the full document. Order is document order then ordinal, so
    repeated calls are byte-identical.
    """
    entities: list[Entity] = []
    for doc in corpus:
        if granularity is Granularity.SENTENCE:
            for ordinal, sentence in enumerate(segment_sentences(doc.full_text)):
                entities.append(
                    Entity(
                        entity_id=entity_id_for(doc.doc_id, granularity, ordinal),
                        parent_doc_id=doc.doc_id,
                        granularity=granularity,
                        ordinal=ordinal,
                        text=sentence,
                    )
                )
        else:
            text = doc.abstract if granularity is Granularity.ABSTRACT else doc.extract
            entities.append(
                Entity(
                    entity_id=entity_id_for(doc.doc_id, granularity, 0),
                    parent_doc_id=doc.doc_id,
                    granularity=granularity,
                    ordinal=0,
                    text=text,
                )
            )
    return entities


def write_corpus(path: str | Path, docs: Iterable[EvidenceDoc]) -> None:
    """Write documents back out in the ingest JSONL schema (test/fixture helper)."""
    with Path(path).open("w", encoding="utf-8") as fh:
        for d in docs:
            fh.write(
                json.dumps(
                    {
                        "id": d.doc_id,
                        "fullDocument": d.full_text,
                        "extract": d.extract,
                        "abstract": d.abstract,
                        "citation": d.citation,
                        "camp": d.camp,
                        "tag": d.arg_type,
                        "year": d.year,
                    },
                    ensure_ascii=False,
                )
                + "\n"
            )
