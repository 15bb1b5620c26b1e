"""Command-line interface.

Subcommands: ingest, embed, build, stats, query, case, eval, serve.
Relative file arguments fall back to ARGWEAVE_DATA_DIR when not found.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .annindex import IndexMode, build_index
from .casebuilder import ArgumentQuery, case_word_count
from .corpus import Granularity, entity_view, load_corpus
from .embedding import HashedEmbedder, embed_entities, load_vectors, save_vectors
from .errors import ArgweaveError, FilterError
from .evalharness import evaluate_graph, format_report, load_pairs, rank_graphs, report_json
from .pathing import CostKind, EdgeCost, PathConstraint
from .queryfilter import parse_filter, select_entities
from .rendering import render_case_text
from .runtime import engine_for, resolve_path, vectors_for_graph
from .semgraph import (
    GraphConfig,
    build_graph,
    format_stats_table,
    graph_stats,
    load_graph,
    louvain_communities,
    pagerank,
    persist_graph,
)


def _granularity(value: str) -> Granularity:
    return Granularity.parse(value)


def _cost_from_args(args, engine) -> EdgeCost:
    kind = CostKind.LENGTH_PENALIZED if args.cost == "length" else CostKind.SEMANTIC_DISTANCE
    return engine.default_cost(kind=kind, lam=args.lam)


def _constraint_from_args(args) -> PathConstraint:
    filter_ast = parse_filter(args.filter) if getattr(args, "filter", None) else None
    return PathConstraint.build(
        community_ids=args.community if getattr(args, "community", None) else None,
        keyword_include=getattr(args, "include_keyword", None) or (),
        keyword_exclude=getattr(args, "exclude_keyword", None) or (),
        max_extract_words=getattr(args, "max_extract_words", None),
        filter_ast=filter_ast,
    )


def cmd_ingest(args) -> int:
    corpus, report = load_corpus(resolve_path(args.corpus), strict=args.strict)
    if args.format == "json":
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print(f"loaded {report.loaded} documents, rejected {report.rejected}")
        for reason, count in sorted(report.reasons.items()):
            print(f"  {reason}: {count}")
    return 0


def cmd_embed(args) -> int:
    corpus, _ = load_corpus(resolve_path(args.corpus))
    if args.import_from:
        vectors = load_vectors(resolve_path(args.import_from), expected_dim=args.dim)
    else:
        entities = entity_view(corpus, _granularity(args.granularity))
        vectors = embed_entities(entities, HashedEmbedder(args.dim))
    count = save_vectors(args.out, vectors, args.dim)
    print(f"wrote {count} vectors (dim {args.dim}) to {args.out}")
    return 0


def cmd_build(args) -> int:
    corpus, _ = load_corpus(resolve_path(args.corpus))
    granularity = _granularity(args.granularity)
    entities = entity_view(corpus, granularity)
    if args.vectors:
        vectors = load_vectors(resolve_path(args.vectors), expected_dim=args.dim)
        provider_id = args.provider_id or f"external-{args.dim}"
    else:
        vectors = embed_entities(entities, HashedEmbedder(args.dim))
        provider_id = f"hashed-{args.dim}"
    config = GraphConfig(
        granularity=granularity,
        provider_id=provider_id,
        dim=args.dim,
        similarity_threshold=args.threshold,
        edge_limit=args.limit,
    )
    index = build_index(sorted(vectors.items(), key=lambda t: t[0]), IndexMode.EXACT)
    graph = build_graph(entities, vectors, index, config, corpus)
    if not args.skip_communities:
        graph.set_communities(louvain_communities(graph, resolution=args.resolution))
    persist_graph(graph, args.out)
    stats = graph_stats(graph)
    print(format_stats_table([(Path(args.out).stem, stats)]))
    return 0


def cmd_stats(args) -> int:
    graph = load_graph(resolve_path(args.graph))
    stats = graph_stats(graph)
    name = Path(args.graph).stem
    if args.format == "json":
        print(
            json.dumps(
                {
                    "graph": name,
                    "vertices": stats.vertex_count,
                    "edges": stats.edge_count,
                    "average_degree": stats.average_degree,
                },
                indent=2,
            )
        )
    else:
        print(format_stats_table([(name, stats)]))
    return 0


def cmd_query(args) -> int:
    corpus, _ = load_corpus(resolve_path(args.corpus))
    graph = load_graph(resolve_path(args.graph))
    engine = engine_for(corpus, graph, args.vectors)
    expr = parse_filter(args.filter)
    results = select_entities(
        corpus, graph, expr, args.limit, vectors=engine.vectors, embedder=engine.embedder
    )
    if args.format == "json":
        rows = []
        for entity_id, score in results:
            doc = corpus.get(graph.attrs(entity_id).parent_doc_id)
            rows.append(
                {
                    "entity_id": entity_id,
                    "score": score,
                    "abstract": doc.abstract,
                    "citation": doc.citation,
                    "camp": doc.camp,
                    "year": doc.year,
                }
            )
        print(json.dumps({"results": rows}, indent=2))
    else:
        for entity_id, score in results:
            doc = corpus.get(graph.attrs(entity_id).parent_doc_id)
            print(f"{score:8.4f}  {entity_id}  [{doc.camp} {doc.year}] {doc.abstract}")
    return 0


def cmd_case(args) -> int:
    engine = engine_from_files_args(args)
    constraint = _constraint_from_args(args)
    cost = _cost_from_args(args, engine)
    cases = engine.build_case(
        ArgumentQuery(args.start),
        [ArgumentQuery(m) for m in (args.middle or [])],
        ArgumentQuery(args.end),
        constraint=constraint,
        cost=cost,
        k=args.k,
    )
    if args.format == "json":
        payload = [
            {
                "total_cost": c.total_cost,
                "total_extract_words": c.total_extract_words,
                "entries": [
                    {
                        "entity_id": e.entity_id,
                        "tag": e.tag,
                        "citation": e.citation,
                        "extract": e.extract,
                        "highlight_spans": [list(s) for s in e.highlight_spans],
                    }
                    for e in c.entries
                ],
            }
            for c in cases
        ]
        print(json.dumps({"cases": payload}, indent=2))
    else:
        for i, c in enumerate(cases):
            if i:
                print("\n" + "=" * 60 + "\n")
            print(
                f"case {i + 1}: cost {c.total_cost:.4f}, "
                f"{case_word_count(c)} extract words"
            )
            print()
            print(render_case_text(c, markers=not args.no_markers))
    return 0


def engine_from_files_args(args):
    corpus, _ = load_corpus(resolve_path(args.corpus))
    graph = load_graph(resolve_path(args.graph))
    return engine_for(corpus, graph, args.vectors)


def cmd_eval(args) -> int:
    corpus, _ = load_corpus(resolve_path(args.corpus))
    pairs = load_pairs(resolve_path(args.pairs))
    rows = []
    for graph_path in args.graph:
        graph = load_graph(resolve_path(graph_path))
        engine = engine_for(corpus, graph, args.vectors)
        kind = (
            CostKind.LENGTH_PENALIZED if args.cost == "length" else CostKind.SEMANTIC_DISTANCE
        )
        cost = engine.default_cost(kind=kind, lam=args.lam)
        rows.append(
            evaluate_graph(engine, pairs, cost=cost, graph_name=Path(graph_path).stem)
        )
    ranked = rank_graphs(rows)
    if args.format == "json":
        print(report_json(ranked))
    else:
        print(format_report(ranked))
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    app = create_app(
        corpus_path=args.corpus,
        graph_path=args.graph,
        vectors_path=args.vectors,
        ui_dir=args.ui,
    )
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def _add_format(parser) -> None:
    parser.add_argument("--format", choices=("text", "json"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="argweave",
        description="Semantic knowledge graphs and debate-case construction.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="validate and report on a corpus file")
    p.add_argument("--corpus", required=True)
    p.add_argument("--strict", action="store_true")
    _add_format(p)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("embed", help="write a vector file with the built-in provider")
    p.add_argument("--corpus", required=True)
    p.add_argument("--granularity", default="abstract")
    p.add_argument("--dim", type=int, default=256)
    p.add_argument("--out", required=True)
    p.add_argument("--import-from", dest="import_from", help="re-validate an external vector file")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("build", help="build and persist a semantic graph")
    p.add_argument("--corpus", required=True)
    p.add_argument("--vectors", help="external vector file (defaults to built-in provider)")
    p.add_argument("--provider-id")
    p.add_argument("--granularity", default="abstract")
    p.add_argument("--dim", type=int, default=256)
    p.add_argument("--threshold", type=float, default=0.10)
    p.add_argument("--limit", type=int, default=100)
    p.add_argument("--resolution", type=float, default=1.0)
    p.add_argument("--skip-communities", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("stats", help="print graph statistics")
    p.add_argument("--graph", required=True)
    _add_format(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("query", help="filter and rank evidence")
    p.add_argument("--graph", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--vectors")
    p.add_argument("--filter", required=True)
    p.add_argument("--limit", type=int, default=20)
    _add_format(p)
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("case", help="build debate cases from arguments")
    p.add_argument("--graph", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--vectors")
    p.add_argument("--start", required=True)
    p.add_argument("--end", required=True)
    p.add_argument("--middle", action="append")
    p.add_argument("--filter")
    p.add_argument("--community", action="append", type=int)
    p.add_argument("--include-keyword", action="append")
    p.add_argument("--exclude-keyword", action="append")
    p.add_argument("--max-extract-words", type=int)
    p.add_argument("--cost", choices=("semantic", "length"), default="semantic")
    p.add_argument("--lambda", dest="lam", type=float, default=0.5)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--no-markers", action="store_true")
    _add_format(p)
    p.set_defaults(func=cmd_case)

    p = sub.add_parser("eval", help="rank graphs by average case words")
    p.add_argument("--corpus", required=True)
    p.add_argument("--vectors")
    p.add_argument("--pairs", required=True)
    p.add_argument("--graph", action="append", required=True)
    p.add_argument("--cost", choices=("semantic", "length"), default="semantic")
    p.add_argument("--lambda", dest="lam", type=float, default=0.5)
    _add_format(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--graph", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--vectors")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8100)
    p.add_argument("--ui", help="directory of built UI assets to serve at /")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FilterError as exc:
        print(f"error [{exc.code}]: {exc.message}", file=sys.stderr)
        return 2
    except ArgweaveError as exc:
        print(f"error [{exc.code}]: {exc.message}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
