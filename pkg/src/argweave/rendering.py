"""Text rendering of debate cases in spoken order: tag, citation, extract.

Entries are separated by a line reading "next", mirroring how debaters mark
the move to the following piece of evidence out loud.
"""

from __future__ import annotations

import re

from .casebuilder import DebateCase

_TOKEN_RE = re.compile(r"\S+")


def mark_spans(extract: str, spans: list[tuple[int, int]]) -> str:
    """Wrap the token ranges in ``**`` markers, preserving original whitespace.

    Spans are half-open token index pairs over the whitespace-split extract.
    """
    if not spans:
        return extract
    tokens = list(_TOKEN_RE.finditer(extract))
    insertions: list[tuple[int, str]] = []
    for start, end in spans:
        if start < 0 or end > len(tokens) or start >= end:
            raise ValueError(f"span ({start}, {end}) outside token bounds")
        insertions.append((tokens[start].start(), "**"))
        insertions.append((tokens[end - 1].end(), "**"))
    insertions.sort(key=lambda t: t[0])
    out: list[str] = []
    pos = 0
    for offset, marker in insertions:
        out.append(extract[pos:offset])
        out.append(marker)
        pos = offset
    out.append(extract[pos:])
    return "".join(out)


def render_case_text(case: DebateCase, markers: bool = True) -> str:
    """One block per entry (tag, citation, extract); blocks joined by "next"."""
    blocks: list[str] = []
    for entry in case.entries:
        extract = mark_spans(entry.extract, entry.highlight_spans) if markers else entry.extract
        blocks.append(f"{entry.tag}\n{entry.citation}\n{extract}")
    return "\nnext\n".join(blocks)
