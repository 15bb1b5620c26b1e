from __future__ import annotations

import pytest

from argweave.corpus import (
    Granularity,
    entity_id_for,
    entity_view,
    load_corpus,
    segment_sentences,
    word_count,
)
from argweave.errors import CorpusError, DuplicateDocIdError

from .conftest import corpus_record, write_jsonl


class TestLoadCorpus:
    def test_clean_three_record_file(self, tmp_path):
        path = write_jsonl(
            tmp_path / "c.jsonl",
            [corpus_record("d1"), corpus_record("d2"), corpus_record("d3")],
        )
        corpus, report = load_corpus(path)
        assert len(corpus) == 3
        assert report.loaded == 3
        assert report.rejected == 0

    def test_empty_abstract_rejected_not_strict(self, tmp_path):
        path = write_jsonl(
            tmp_path / "c.jsonl",
            [corpus_record("d1"), corpus_record("d2", abstract="  "), corpus_record("d3")],
        )
        corpus, report = load_corpus(path, strict=False)
        assert len(corpus) == 2
        assert report.loaded == 2
        assert report.rejected == 1
        assert "d2" not in corpus

    def test_empty_extract_rejected(self, tmp_path):
        path = write_jsonl(
            tmp_path / "c.jsonl", [corpus_record("d1", extract=""), corpus_record("d2")]
        )
        _, report = load_corpus(path)
        assert report.reasons == {"empty extract": 1}

    def test_word_counts_recomputed(self, tmp_path):
        # stored counts in the record are ignored; the 12-token extract wins
        extract = "one two three four five six seven eight nine ten eleven twelve"
        assert len(extract.split()) == 12
        rec = corpus_record("d1", extract=extract)
        rec["word_count_extract"] = 999  # unknown keys ignored, counts recomputed
        path = write_jsonl(tmp_path / "c.jsonl", [rec])
        corpus, _ = load_corpus(path)
        assert corpus.get("d1").word_count_extract == 12
        assert corpus.get("d1").word_count_full == word_count(rec["fullDocument"])

    def test_duplicate_doc_id_always_aborts(self, tmp_path):
        path = write_jsonl(
            tmp_path / "c.jsonl", [corpus_record("d1"), corpus_record("d1")]
        )
        with pytest.raises(DuplicateDocIdError):
            load_corpus(path, strict=False)
        with pytest.raises(DuplicateDocIdError):
            load_corpus(path, strict=True)

    def test_strict_mode_aborts_on_malformed(self, tmp_path):
        path = tmp_path / "c.jsonl"
        path.write_text('{"id": "d1"\nnot json\n', encoding="utf-8")
        with pytest.raises(CorpusError):
            load_corpus(path, strict=True)

    def test_non_strict_counts_malformed(self, tmp_path):
        path = tmp_path / "c.jsonl"
        lines = ["not json", '{"id": "d1"}', ""]
        import json

        lines.append(json.dumps(corpus_record("d2")))
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        corpus, report = load_corpus(path, strict=False)
        assert report.loaded == 1
        assert report.rejected == 2
        assert len(corpus) == 1

    def test_missing_file(self, tmp_path):
        with pytest.raises(CorpusError):
            load_corpus(tmp_path / "absent.jsonl")

    def test_year_must_be_integer(self, tmp_path):
        path = write_jsonl(tmp_path / "c.jsonl", [corpus_record("d1", year="2013")])
        _, report = load_corpus(path)
        assert report.rejected == 1

    def test_report_conserves_record_count(self, tmp_path):
        records = [
            corpus_record("d1"),
            corpus_record("d2", abstract=""),
            corpus_record("d3"),
            corpus_record("d4", extract=" "),
        ]
        path = write_jsonl(tmp_path / "c.jsonl", records)
        _, report = load_corpus(path)
        assert report.loaded + report.rejected == len(records)


class TestSegmentSentences:
    def test_simple_terminators(self):
        assert segment_sentences("A. B? C!") == ["A.", "B?", "C!"]

    def test_no_terminator(self):
        assert segment_sentences("No terminator here") == ["No terminator here"]

    def test_abbreviation_exemption(self):
        assert segment_sentences("Dr. Smith agrees. Done.") == ["Dr. Smith agrees.", "Done."]

    def test_us_abbreviation(self):
        got = segment_sentences("The U.S. Senate voted. It passed.")
        assert got == ["The U.S. Senate voted.", "It passed."]

    def test_lowercase_continuation_not_split(self):
        assert segment_sentences("He said no. but then agreed.") == [
            "He said no. but then agreed."
        ]

    def test_empty_text(self):
        assert segment_sentences("") == []
        assert segment_sentences("   ") == []

    def test_sentences_are_substrings(self, mini_corpus):
        for doc in mini_corpus:
            for sentence in segment_sentences(doc.full_text):
                assert sentence in doc.full_text
                assert sentence.strip() == sentence
                assert sentence

    def test_concatenation_covers_text(self, mini_corpus):
        for doc in mini_corpus:
            joined = "".join(segment_sentences(doc.full_text)).replace(" ", "")
            original = doc.full_text.replace(" ", "")
            assert joined == original


class TestEntityView:
    def test_abstract_one_per_doc(self, tmp_path):
        path = write_jsonl(
            tmp_path / "c.jsonl",
            [corpus_record("d1", abstract="Alpha."), corpus_record("d2", abstract="Beta."),
             corpus_record("d3", abstract="Gamma.")],
        )
        corpus, _ = load_corpus(path)
        entities = entity_view(corpus, Granularity.ABSTRACT)
        assert [e.text for e in entities] == ["Alpha.", "Beta.", "Gamma."]
        assert all(e.ordinal == 0 for e in entities)

    def test_sentence_counts_match_segmenter(self, tmp_path):
        # the oracle is segment_sentences itself, run per document
        full1 = "One sentence. Two sentence. Three sentence. Four sentence."
        full2 = "Only one. And two."
        recs = [
            corpus_record("d1"),
            corpus_record("d2"),
        ]
        recs[0]["fullDocument"] = full1
        recs[1]["fullDocument"] = full2
        path = write_jsonl(tmp_path / "c.jsonl", recs)
        corpus, _ = load_corpus(path)
        expected = sum(len(segment_sentences(d.full_text)) for d in corpus)
        entities = entity_view(corpus, Granularity.SENTENCE)
        assert len(entities) == expected == 6

    def test_view_is_pure(self, mini_corpus):
        a = entity_view(mini_corpus, Granularity.EXTRACT)
        b = entity_view(mini_corpus, Granularity.EXTRACT)
        assert a == b

    def test_sentence_entities_substrings_of_parent(self, mini_corpus):
        by_id = {d.doc_id: d for d in mini_corpus}
        for entity in entity_view(mini_corpus, Granularity.SENTENCE):
            assert entity.text in by_id[entity.parent_doc_id].full_text

    def test_entity_ids_deterministic(self):
        assert entity_id_for("d9", Granularity.SENTENCE, 3) == entity_id_for(
            "d9", Granularity.SENTENCE, 3
        )
        assert entity_id_for("d9", Granularity.ABSTRACT, 0) != entity_id_for(
            "d9", Granularity.EXTRACT, 0
        )

    def test_ordinal_order_within_doc(self, mini_corpus):
        entities = entity_view(mini_corpus, Granularity.SENTENCE)
        last_by_doc: dict[str, int] = {}
        for e in entities:
            prev = last_by_doc.get(e.parent_doc_id, -1)
            assert e.ordinal == prev + 1
            last_by_doc[e.parent_doc_id] = e.ordinal
