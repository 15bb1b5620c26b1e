"""HTTP service over a loaded corpus, graph, and vector set.

Read endpoints are fully concurrent; graph builds run on a worker thread and
are serialized by a lock, with queued/running/done status reported per job.
Every error renders as {"error": {"code", "message", "position"?}} so the UI
can anchor filter problems at their source column.
"""

from __future__ import annotations

import itertools
import threading
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from . import __version__
from .annindex import IndexMode, build_index
from .casebuilder import ArgumentQuery, CaseEngine, case_word_count
from .corpus import Granularity, entity_view, load_corpus
from .embedding import HashedEmbedder, embed_entities, save_vectors
from .errors import ArgweaveError, FilterError
from .pathing import CostKind, PathConstraint
from .queryfilter import parse_filter, select_entities
from .rendering import render_case_text
from .runtime import data_dir, engine_for, resolve_path
from .semgraph import (
    GraphConfig,
    build_graph,
    graph_stats,
    load_graph,
    louvain_communities,
    pagerank,
    persist_graph,
)

_NOT_FOUND_CODES = {"NO_PATH"}


class CaseRequest(BaseModel):
    start: str = Field(min_length=1)
    end: str = Field(min_length=1)
    middles: list[str] = Field(default_factory=list)
    filter: Optional[str] = None
    communities: Optional[list[int]] = None
    keywords_include: list[str] = Field(default_factory=list)
    keywords_exclude: list[str] = Field(default_factory=list)
    max_extract_words: Optional[int] = None
    cost_kind: str = Field(default="semantic_distance")
    lam: float = Field(default=0.5, alias="lambda", ge=0.0)
    k: int = Field(default=1, ge=1, le=100)

    model_config = {"populate_by_name": True}


class QueryRequest(BaseModel):
    filter: str
    limit: int = Field(default=20, ge=0, le=1000)


class IngestRequest(BaseModel):
    path: str
    strict: bool = False


class BuildRequest(BaseModel):
    granularity: str = "abstract"
    dim: int = Field(default=256, ge=1)
    threshold: float = Field(default=0.10, gt=0.0, le=1.0)
    edge_limit: int = Field(default=100, ge=1)
    resolution: float = Field(default=1.0, gt=0.0)


class AppState:
    def __init__(self, engine: CaseEngine | None):
        self.engine = engine
        self.corpus_pending = None
        self.lock = threading.Lock()
        self.build_lock = threading.Lock()
        self.jobs: dict[str, dict] = {}
        self.job_counter = itertools.count(1)
        self._pagerank_cache: dict | None = None

    def pagerank_scores(self) -> dict[str, float]:
        if self._pagerank_cache is None:
            self._pagerank_cache = pagerank(self.engine.graph).scores
        return self._pagerank_cache

    def swap_engine(self, engine: CaseEngine) -> None:
        with self.lock:
            self.engine = engine
            self._pagerank_cache = None


def _error_payload(code: str, message: str, position: dict | None = None) -> dict:
    error: dict = {"code": code, "message": message}
    if position is not None:
        error["position"] = position
    return {"error": error}


def _constraint_from_request(req: CaseRequest) -> PathConstraint:
    filter_ast = parse_filter(req.filter) if req.filter else None
    return PathConstraint.build(
        community_ids=req.communities,
        keyword_include=req.keywords_include,
        keyword_exclude=req.keywords_exclude,
        max_extract_words=req.max_extract_words,
        filter_ast=filter_ast,
    )


def _case_payload(engine: CaseEngine, case) -> dict:
    return {
        "total_cost": case.total_cost,
        "total_extract_words": case.total_extract_words,
        "case_words": case_word_count(case),
        "entries": [
            {
                "entity_id": e.entity_id,
                "tag": e.tag,
                "citation": e.citation,
                "extract": e.extract,
                "highlight_spans": [list(s) for s in e.highlight_spans],
            }
            for e in case.entries
        ],
        "rendered": render_case_text(case, markers=True),
    }


def create_app(
    corpus_path: str | Path | None = None,
    graph_path: str | Path | None = None,
    vectors_path: str | Path | None = None,
    ui_dir: str | Path | None = None,
    engine: CaseEngine | None = None,
) -> FastAPI:
    """Build the service; pass an engine directly or the file paths to load."""
    if engine is None and corpus_path is not None and graph_path is not None:
        corpus, _ = load_corpus(resolve_path(corpus_path))
        graph = load_graph(resolve_path(graph_path))
        engine = engine_for(corpus, graph, vectors_path)
    state = AppState(engine)

    app = FastAPI(title="argweave", version=__version__)
    app.state.argweave = state

    @app.exception_handler(FilterError)
    async def filter_error_handler(_: Request, exc: FilterError):
        return JSONResponse(
            status_code=400,
            content=_error_payload(
                exc.code, exc.bare_message, {"line": exc.line, "column": exc.column}
            ),
        )

    @app.exception_handler(ArgweaveError)
    async def argweave_error_handler(_: Request, exc: ArgweaveError):
        status = 404 if exc.code in _NOT_FOUND_CODES else 400
        return JSONResponse(status_code=status, content=_error_payload(exc.code, exc.message))

    @app.exception_handler(RequestValidationError)
    async def validation_error_handler(_: Request, exc: RequestValidationError):
        first = exc.errors()[0] if exc.errors() else {}
        loc = ".".join(str(p) for p in first.get("loc", ()))
        message = f"{loc}: {first.get('msg', 'invalid request')}" if loc else "invalid request"
        return JSONResponse(status_code=400, content=_error_payload("VALIDATION_ERROR", message))

    def require_engine() -> CaseEngine:
        if state.engine is None:
            raise ArgweaveError("no graph loaded; POST /api/corpus and /api/graph/build first")
        return state.engine

    @app.get("/api/health")
    async def health():
        return {
            "status": "ok",
            "version": __version__,
            "graph_loaded": state.engine is not None,
        }

    @app.get("/api/graph/stats")
    async def stats():
        engine = require_engine()
        s = graph_stats(engine.graph)
        return {
            "vertices": s.vertex_count,
            "edges": s.edge_count,
            "average_degree": s.average_degree,
        }

    @app.get("/api/communities")
    async def communities(top: int = 5):
        engine = require_engine()
        scores = state.pagerank_scores()
        members: dict[int, list[str]] = {}
        for node in engine.graph.nodes():
            cid = engine.graph.attrs(node).community_id
            if cid is None:
                continue
            members.setdefault(cid, []).append(node)
        out = []
        for cid in sorted(members):
            ranked = sorted(members[cid], key=lambda n: (-scores.get(n, 0.0), n))[:top]
            out.append(
                {
                    "community_id": cid,
                    "size": len(members[cid]),
                    "top_members": [
                        {
                            "entity_id": n,
                            "score": scores.get(n, 0.0),
                            "tag": engine.corpus.get(
                                engine.graph.attrs(n).parent_doc_id
                            ).abstract,
                        }
                        for n in ranked
                    ],
                }
            )
        return {"communities": out}

    @app.post("/api/query")
    async def query(req: QueryRequest):
        engine = require_engine()
        expr = parse_filter(req.filter)
        results = select_entities(
            engine.corpus,
            engine.graph,
            expr,
            req.limit,
            vectors=engine.vectors,
            embedder=engine.embedder,
        )
        rows = []
        for entity_id, score in results:
            doc = engine.corpus.get(engine.graph.attrs(entity_id).parent_doc_id)
            rows.append(
                {
                    "entity_id": entity_id,
                    "score": score,
                    "abstract": doc.abstract,
                    "citation": doc.citation,
                    "camp": doc.camp,
                    "arg_type": doc.arg_type,
                    "year": doc.year,
                }
            )
        return {"results": rows}

    @app.post("/api/case")
    async def case(req: CaseRequest):
        engine = require_engine()
        constraint = _constraint_from_request(req)
        kind = (
            CostKind.LENGTH_PENALIZED
            if req.cost_kind in ("length_penalized", "length")
            else CostKind.SEMANTIC_DISTANCE
        )
        cost = engine.default_cost(kind=kind, lam=req.lam)
        cases = engine.build_case(
            ArgumentQuery(req.start),
            [ArgumentQuery(m) for m in req.middles],
            ArgumentQuery(req.end),
            constraint=constraint,
            cost=cost,
            k=req.k,
        )
        return {"cases": [_case_payload(engine, c) for c in cases]}

    @app.post("/api/corpus")
    async def ingest(req: IngestRequest):
        corpus, report = load_corpus(resolve_path(req.path), strict=req.strict)
        with state.lock:
            state.corpus_pending = corpus  # used by the next build
        payload = report.to_dict()
        payload["staged_for_build"] = True
        return payload

    def _run_build(job_id: str, req: BuildRequest) -> None:
        job = state.jobs[job_id]
        with state.build_lock:
            job["status"] = "running"
            try:
                corpus = state.corpus_pending
                if corpus is None:
                    corpus = require_engine().corpus
                granularity = Granularity.parse(req.granularity)
                job["progress"] = "embedding"
                entities = entity_view(corpus, granularity)
                embedder = HashedEmbedder(req.dim)
                vectors = embed_entities(entities, embedder)
                job["progress"] = "indexing"
                index = build_index(
                    sorted(vectors.items(), key=lambda t: t[0]), IndexMode.EXACT
                )
                config = GraphConfig(
                    granularity=granularity,
                    provider_id=embedder.provider_id,
                    dim=req.dim,
                    similarity_threshold=req.threshold,
                    edge_limit=req.edge_limit,
                )
                job["progress"] = "building graph"
                graph = build_graph(entities, vectors, index, config, corpus)
                job["progress"] = "detecting communities"
                graph.set_communities(louvain_communities(graph, resolution=req.resolution))
                out_dir = data_dir()
                out_dir.mkdir(parents=True, exist_ok=True)
                graph_file = out_dir / f"graph-{job_id}.awkg"
                vector_file = out_dir / f"vectors-{job_id}.awev"
                persist_graph(graph, graph_file)
                save_vectors(vector_file, vectors, req.dim)
                state.swap_engine(CaseEngine(corpus, graph, vectors, index, embedder))
                job["graph_file"] = str(graph_file)
                job["vector_file"] = str(vector_file)
                job["progress"] = "done"
                job["status"] = "done"
            except Exception as exc:  # surfaced through the job status
                job["status"] = "failed"
                job["error"] = str(exc)

    @app.post("/api/graph/build")
    async def build(req: BuildRequest):
        job_id = f"job-{next(state.job_counter)}"
        state.jobs[job_id] = {"job_id": job_id, "status": "queued", "progress": "queued"}
        thread = threading.Thread(target=_run_build, args=(job_id, req), daemon=True)
        thread.start()
        return {"job_id": job_id, "status": "queued"}

    @app.get("/api/graph/build/{job_id}")
    async def build_status(job_id: str):
        job = state.jobs.get(job_id)
        if job is None:
            return JSONResponse(
                status_code=404,
                content=_error_payload("UNKNOWN_JOB", f"no build job {job_id!r}"),
            )
        return job

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
