"""Rank graphs by the average spoken-extract length of generated cases.

For a fixed set of (start, end) argument pairs, each graph is asked to build
the single best case per pair; the graph's figure of merit is the mean
extract word count over the pairs it solved. Debaters racing the clock
prefer graphs whose chains read faster, so lower ranks first. Unsolved pairs
are excluded from the mean and surfaced as coverage.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .casebuilder import ArgumentQuery, CaseEngine, case_word_count
from .errors import ArgweaveError
from .pathing import EdgeCost, PathConstraint


@dataclass
class EvalRow:
    graph_name: str
    pairs_attempted: int
    pairs_solved: int
    average_case_words: float | None  # None when nothing solved

    def to_dict(self) -> dict:
        return {
            "graph": self.graph_name,
            "attempted": self.pairs_attempted,
            "solved": self.pairs_solved,
            "average_case_words": self.average_case_words,
        }


def load_pairs(path: str | Path) -> list[tuple[str, str]]:
    """Read the JSONL pairs file: one {"start": str, "end": str} per line."""
    pairs: list[tuple[str, str]] = []
    with Path(path).open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            if "start" not in obj or "end" not in obj:
                raise ValueError(f"pairs line {lineno}: needs 'start' and 'end'")
            pairs.append((obj["start"], obj["end"]))
    return pairs


def evaluate_graph(
    engine: CaseEngine,
    pairs: list[tuple[str, str]],
    cost: EdgeCost | None = None,
    constraint: PathConstraint = PathConstraint(),
    graph_name: str = "graph",
) -> EvalRow:
    """Build one case per pair and report solved count and mean case words."""
    if not pairs:
        raise ValueError("need at least one argument pair")
    solved = 0
    total_words = 0
    for start_text, end_text in pairs:
        try:
            cases = engine.build_case(
                ArgumentQuery(start_text),
                [],
                ArgumentQuery(end_text),
                constraint=constraint,
                cost=cost,
                k=1,
            )
        except ArgweaveError:
            continue
        if not cases:
            continue
        solved += 1
        total_words += case_word_count(cases[0])
    average = (total_words / solved) if solved else None
    return EvalRow(graph_name, len(pairs), solved, average)


def rank_graphs(rows: list[EvalRow]) -> list[EvalRow]:
    """Ascending by average case words; unsolved (undefined) rows sort last."""
    if not rows:
        raise ValueError("need at least one row")
    return sorted(
        rows,
        key=lambda r: (
            r.average_case_words is None,
            r.average_case_words if r.average_case_words is not None else 0.0,
            r.graph_name,
        ),
    )


def format_report(rows: list[EvalRow]) -> str:
    """Aligned-column text report, one row per graph."""
    header = ("Graph", "Pairs", "Solved", "Average Words in Case")
    rendered = [header]
    for r in rows:
        avg = "undefined" if r.average_case_words is None else f"{r.average_case_words:.1f}"
        rendered.append((r.graph_name, str(r.pairs_attempted), str(r.pairs_solved), avg))
    widths = [max(len(row[i]) for row in rendered) for i in range(4)]
    lines = []
    for row in rendered:
        lines.append(
            "  ".join(
                col.ljust(widths[i]) if i == 0 else col.rjust(widths[i])
                for i, col in enumerate(row)
            )
        )
    return "\n".join(lines)


def report_json(rows: list[EvalRow]) -> str:
    return json.dumps({"rows": [r.to_dict() for r in rows]}, indent=2)
