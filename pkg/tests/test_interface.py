from __future__ import annotations

import json
import time

import pytest
from fastapi.testclient import TestClient

from argweave.casebuilder import CaseEntry, DebateCase
from argweave.cli import main
from argweave.rendering import mark_spans, render_case_text
from argweave.runtime import engine_from_files
from argweave.semgraph import graph_stats
from argweave.server import create_app


def case_of(entries) -> DebateCase:
    return DebateCase(entries, 0.5, sum(len(e.extract.split()) for e in entries))


class TestRendering:
    def test_single_entry_no_separator(self):
        case = case_of([CaseEntry("e1", "Tag one.", "Cite 13", "some extract text")])
        text = render_case_text(case)
        assert "next" not in text.splitlines()
        assert text.splitlines() == ["Tag one.", "Cite 13", "some extract text"]

    def test_two_entries_one_separator(self):
        case = case_of(
            [
                CaseEntry("e1", "Tag one.", "Cite 13", "first extract"),
                CaseEntry("e2", "Tag two.", "Cite 14", "second extract"),
            ]
        )
        lines = render_case_text(case).splitlines()
        assert lines.count("next") == 1
        assert lines == [
            "Tag one.", "Cite 13", "first extract",
            "next",
            "Tag two.", "Cite 14", "second extract",
        ]

    def test_marker_insertion(self):
        # hand-applied: span (1, 3) wraps tokens 1 and 2
        entry = CaseEntry(
            "e1", "t", "c", "global warming causes floods", [(1, 3)]
        )
        text = render_case_text(case_of([entry]), markers=True)
        assert "global **warming causes** floods" in text

    def test_markers_off_leaves_text_alone(self):
        entry = CaseEntry("e1", "t", "c", "global warming causes floods", [(1, 3)])
        text = render_case_text(case_of([entry]), markers=False)
        assert "**" not in text
        assert "global warming causes floods" in text

    def test_mark_spans_preserves_whitespace(self):
        assert mark_spans("a  b   c", [(1, 2)]) == "a  **b**   c"

    def test_mark_spans_bounds_checked(self):
        with pytest.raises(ValueError):
            mark_spans("a b", [(1, 3)])

    def test_fixture_corpus_render_has_no_stray_markers(self, mini_corpus):
        for doc in mini_corpus:
            assert "**" not in doc.extract
        entry = CaseEntry("x", "t", "c", next(iter(mini_corpus)).extract)
        assert "**" not in render_case_text(case_of([entry]), markers=False)


@pytest.fixture(scope="module")
def built(tmp_path_factory, ):
    """CLI-built graph over the fixture corpus, shared by interface tests."""
    tmp = tmp_path_factory.mktemp("cli")
    graph_path = tmp / "mini.awkg"
    vec_path = tmp / "mini.awev"
    rc = main(
        [
            "build",
            "--corpus", "fixtures/mini_corpus.jsonl",
            "--granularity", "abstract",
            "--dim", "256",
            "--out", str(graph_path),
        ]
    )
    assert rc == 0
    rc = main(
        [
            "embed",
            "--corpus", "fixtures/mini_corpus.jsonl",
            "--granularity", "abstract",
            "--dim", "256",
            "--out", str(vec_path),
        ]
    )
    assert rc == 0
    return graph_path, vec_path


class TestCli:
    def test_ingest_report(self, capsys):
        assert main(["ingest", "--corpus", "fixtures/mini_corpus.jsonl"]) == 0
        out = capsys.readouterr().out
        assert "loaded 60 documents" in out

    def test_ingest_json_format(self, capsys):
        assert main(
            ["ingest", "--corpus", "fixtures/mini_corpus.jsonl", "--format", "json"]
        ) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["loaded"] == 60

    def test_stats(self, built, capsys):
        graph_path, _ = built
        assert main(["stats", "--graph", str(graph_path), "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["vertices"] == 60
        assert payload["edges"] > 0

    def test_query(self, built, capsys):
        graph_path, vec_path = built
        rc = main(
            [
                "query",
                "--graph", str(graph_path),
                "--corpus", "fixtures/mini_corpus.jsonl",
                "--vectors", str(vec_path),
                "--filter", "camp = 'Gonzaga' AND SIMILAR('environment')",
                "--limit", "5",
                "--format", "json",
            ]
        )
        assert rc == 0
        payload = json.loads(capsys.readouterr().out)
        assert 0 < len(payload["results"]) <= 5
        assert all(r["camp"] == "Gonzaga" for r in payload["results"])

    def test_filter_error_exit_code(self, built, capsys):
        graph_path, vec_path = built
        rc = main(
            [
                "query",
                "--graph", str(graph_path),
                "--corpus", "fixtures/mini_corpus.jsonl",
                "--vectors", str(vec_path),
                "--filter", "year = ",
            ]
        )
        assert rc == 2
        assert "FILTER_SYNTAX_ERROR" in capsys.readouterr().err

    def test_case_command(self, built, capsys):
        graph_path, vec_path = built
        rc = main(
            [
                "case",
                "--graph", str(graph_path),
                "--corpus", "fixtures/mini_corpus.jsonl",
                "--vectors", str(vec_path),
                "--start", "Warming is real and caused by carbon emissions",
                "--end", "Economic development causes resource depletion",
                "--k", "2",
                "--format", "json",
            ]
        )
        assert rc == 0
        payload = json.loads(capsys.readouterr().out)
        assert 1 <= len(payload["cases"]) <= 2
        costs = [c["total_cost"] for c in payload["cases"]]
        assert costs == sorted(costs)

    def test_eval_command(self, built, capsys):
        graph_path, _ = built
        rc = main(
            [
                "eval",
                "--corpus", "fixtures/mini_corpus.jsonl",
                "--pairs", "fixtures/eval_pairs.jsonl",
                "--graph", str(graph_path),
                "--format", "json",
            ]
        )
        assert rc == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["rows"][0]["attempted"] == 10


@pytest.fixture(scope="module")
def client(built, tmp_path_factory):
    graph_path, vec_path = built
    data_dir = tmp_path_factory.mktemp("server-data")
    app = create_app(
        corpus_path="fixtures/mini_corpus.jsonl",
        graph_path=graph_path,
        vectors_path=vec_path,
    )
    import os

    old = os.environ.get("ARGWEAVE_DATA_DIR")
    os.environ["ARGWEAVE_DATA_DIR"] = str(data_dir)
    try:
        with TestClient(app) as c:
            yield c
    finally:
        if old is None:
            os.environ.pop("ARGWEAVE_DATA_DIR", None)
        else:
            os.environ["ARGWEAVE_DATA_DIR"] = old


class TestServer:
    def test_health(self, client):
        r = client.get("/api/health")
        assert r.status_code == 200
        assert r.json()["status"] == "ok"
        assert r.json()["graph_loaded"] is True

    def test_stats_matches_direct_call(self, client, built):
        graph_path, vec_path = built
        r = client.get("/api/graph/stats")
        assert r.status_code == 200
        engine = engine_from_files("fixtures/mini_corpus.jsonl", graph_path, vec_path)
        s = graph_stats(engine.graph)
        assert r.json() == {
            "vertices": s.vertex_count,
            "edges": s.edge_count,
            "average_degree": s.average_degree,
        }

    def test_query_endpoint(self, client):
        r = client.post(
            "/api/query",
            json={"filter": "camp = 'Gonzaga' AND year = 2013 AND SIMILAR('environment')"},
        )
        assert r.status_code == 200
        results = r.json()["results"]
        assert results
        assert all(row["camp"] == "Gonzaga" and row["year"] == 2013 for row in results)
        scores = [row["score"] for row in results]
        assert scores == sorted(scores, reverse=True)

    def test_query_syntax_error_position(self, client):
        r = client.post("/api/query", json={"filter": "year ="})
        assert r.status_code == 400
        err = r.json()["error"]
        assert err["code"] == "FILTER_SYNTAX_ERROR"
        assert err["position"]["column"] == 7

    def test_case_endpoint_sorted(self, client):
        r = client.post(
            "/api/case",
            json={
                "start": "Warming is real and caused by carbon emissions",
                "end": "Economic development causes resource depletion",
                "k": 3,
            },
        )
        assert r.status_code == 200
        cases = r.json()["cases"]
        assert 1 <= len(cases) <= 3
        costs = [c["total_cost"] for c in cases]
        assert costs == sorted(costs)
        first = cases[0]["entries"][0]
        assert {"entity_id", "tag", "citation", "extract", "highlight_spans"} <= set(first)

    def test_case_with_filter_constraint(self, client):
        r = client.post(
            "/api/case",
            json={
                "start": "Warming is real and caused by carbon emissions",
                "end": "Ocean collapse triggers famine in fishing nations",
                "filter": "year >= 2013",
                "k": 1,
            },
        )
        assert r.status_code == 200

    def test_case_validation_error(self, client):
        r = client.post("/api/case", json={"start": "x", "end": "y", "k": 0})
        assert r.status_code == 400
        assert r.json()["error"]["code"] == "VALIDATION_ERROR"

    def test_no_candidate_is_400(self, client):
        r = client.post(
            "/api/case",
            json={
                "start": "warming carbon",
                "end": "resource depletion",
                "filter": "year = 1900",
            },
        )
        assert r.status_code == 400
        assert r.json()["error"]["code"] == "NO_CANDIDATE"

    def test_communities_endpoint(self, client):
        r = client.get("/api/communities")
        assert r.status_code == 200
        communities = r.json()["communities"]
        assert communities
        for community in communities:
            assert community["size"] >= 1
            assert community["top_members"]
            scores = [m["score"] for m in community["top_members"]]
            assert scores == sorted(scores, reverse=True)

    def test_build_job_lifecycle(self, client):
        r = client.post(
            "/api/graph/build",
            json={"granularity": "abstract", "dim": 64, "threshold": 0.2},
        )
        assert r.status_code == 200
        job_id = r.json()["job_id"]
        for _ in range(200):
            status = client.get(f"/api/graph/build/{job_id}").json()
            if status["status"] in ("done", "failed"):
                break
            time.sleep(0.05)
        assert status["status"] == "done"
        assert "graph_file" in status
        stats_after = client.get("/api/graph/stats").json()
        assert stats_after["vertices"] == 60

    def test_unknown_job(self, client):
        r = client.get("/api/graph/build/job-99999")
        assert r.status_code == 404
        assert r.json()["error"]["code"] == "UNKNOWN_JOB"


class TestSentenceGranularityPipeline:
    def test_sentence_graph_counts_and_case(self, tmp_path, mini_corpus, capsys):
        from argweave.corpus import Granularity, entity_view

        graph_path = tmp_path / "sent.awkg"
        rc = main(
            [
                "build",
                "--corpus", "fixtures/mini_corpus.jsonl",
                "--granularity", "sentence",
                "--dim", "128",
                "--threshold", "0.25",
                "--out", str(graph_path),
            ]
        )
        assert rc == 0
        capsys.readouterr()
        expected_entities = len(entity_view(mini_corpus, Granularity.SENTENCE))
        rc = main(["stats", "--graph", str(graph_path), "--format", "json"])
        assert rc == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["vertices"] == expected_entities
        # a case still resolves and renders at sentence granularity
        rc = main(
            [
                "case",
                "--graph", str(graph_path),
                "--corpus", "fixtures/mini_corpus.jsonl",
                "--start", "warming is real",
                "--end", "resource depletion",
                "--k", "1",
                "--format", "json",
            ]
        )
        assert rc == 0
        cases = json.loads(capsys.readouterr().out)["cases"]
        assert cases
        assert 1 <= len(cases[0]["entries"]) <= 12


class TestCliExtras:
    def test_case_with_middle_argument(self, built, capsys):
        graph_path, vec_path = built
        rc = main(
            [
                "case",
                "--graph", str(graph_path),
                "--corpus", "fixtures/mini_corpus.jsonl",
                "--vectors", str(vec_path),
                "--start", "Warming is real and caused by carbon emissions",
                "--middle", "Ocean acidification destroys marine food webs",
                "--end", "Ocean collapse triggers famine in fishing nations",
                "--format", "json",
            ]
        )
        assert rc == 0
        payload = json.loads(capsys.readouterr().out)
        assert len(payload["cases"]) == 1
        entry_tags = [e["tag"] for e in payload["cases"][0]["entries"]]
        assert any("acidification" in t.lower() for t in entry_tags)

    def test_embed_import_revalidates(self, built, tmp_path, capsys):
        _, vec_path = built
        out = tmp_path / "copy.awev"
        rc = main(
            [
                "embed",
                "--corpus", "fixtures/mini_corpus.jsonl",
                "--dim", "256",
                "--import-from", str(vec_path),
                "--out", str(out),
            ]
        )
        assert rc == 0
        assert out.read_bytes() == vec_path.read_bytes()


class TestIngestEndpoint:
    def test_ingest_stages_corpus_for_build(self, client):
        r = client.post(
            "/api/corpus", json={"path": "fixtures/mini_corpus.jsonl", "strict": True}
        )
        assert r.status_code == 200
        payload = r.json()
        assert payload["loaded"] == 60
        assert payload["rejected"] == 0
        assert payload["staged_for_build"] is True

    def test_ingest_missing_file_is_400(self, client):
        r = client.post("/api/corpus", json={"path": "no/such/file.jsonl"})
        assert r.status_code == 400
        assert r.json()["error"]["code"] == "CORPUS_ERROR"


class TestDeterminism:
    def test_api_responses_are_deterministic(self, client):
        case_req = {
            "start": "Warming is real and caused by carbon emissions",
            "end": "Economic development causes resource depletion",
            "k": 3,
        }
        first = client.post("/api/case", json=case_req).content
        second = client.post("/api/case", json=case_req).content
        assert first == second
        query_req = {"filter": "SIMILAR('ocean warming') AND year >= 2015", "limit": 10}
        assert (
            client.post("/api/query", json=query_req).content
            == client.post("/api/query", json=query_req).content
        )
