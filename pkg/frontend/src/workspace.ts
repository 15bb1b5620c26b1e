/**
 * Workspace state for the case builder: argument inputs, constraint form,
 * cost selection, and the fetched case list. The state always round-trips
 * to a valid CaseRequest payload or reports why it cannot.
 */

import type { CasePayload, CaseRequestPayload } from "./api.js";

export interface CaseWorkspace {
  start: string;
  middles: string[];
  end: string;
  filterText: string;
  communitiesText: string; // comma-separated ids, raw form state
  keywordsIncludeText: string;
  keywordsExcludeText: string;
  maxExtractWords: string; // raw numeric field
  costKind: "semantic_distance" | "length_penalized";
  lambda: number;
  k: number;
  cases: CasePayload[];
  selectedIndex: number;
}

export function emptyWorkspace(): CaseWorkspace {
  return {
    start: "",
    middles: [],
    end: "",
    filterText: "",
    communitiesText: "",
    keywordsIncludeText: "",
    keywordsExcludeText: "",
    maxExtractWords: "",
    costKind: "semantic_distance",
    lambda: 0.5,
    k: 3,
    cases: [],
    selectedIndex: 0,
  };
}

function splitList(raw: string): string[] {
  return raw
    .split(",")
    .map((s) => s.trim())
    .filter((s) => s.length > 0);
}

export function workspaceProblems(ws: CaseWorkspace): string[] {
  const problems: string[] = [];
  if (!ws.start.trim()) problems.push("start argument is required");
  if (!ws.end.trim()) problems.push("end argument is required");
  if (!(ws.k >= 1 && ws.k <= 100)) problems.push("k must be between 1 and 100");
  if (ws.lambda < 0) problems.push("lambda must be >= 0");
  for (const part of splitList(ws.communitiesText)) {
    if (!/^\d+$/.test(part)) problems.push(`community id ${JSON.stringify(part)} is not a number`);
  }
  if (ws.maxExtractWords.trim() && !/^\d+$/.test(ws.maxExtractWords.trim())) {
    problems.push("max extract words must be a number");
  }
  return problems;
}

export function toCaseRequest(ws: CaseWorkspace): CaseRequestPayload {
  const problems = workspaceProblems(ws);
  if (problems.length > 0) {
    throw new Error(problems[0]);
  }
  const communities = splitList(ws.communitiesText).map((s) => parseInt(s, 10));
  const request: CaseRequestPayload = {
    start: ws.start.trim(),
    end: ws.end.trim(),
    middles: ws.middles.map((m) => m.trim()).filter((m) => m.length > 0),
    keywords_include: splitList(ws.keywordsIncludeText),
    keywords_exclude: splitList(ws.keywordsExcludeText),
    cost_kind: ws.costKind,
    lambda: ws.lambda,
    k: ws.k,
  };
  if (ws.filterText.trim()) request.filter = ws.filterText.trim();
  if (communities.length > 0) request.communities = communities;
  if (ws.maxExtractWords.trim()) {
    request.max_extract_words = parseInt(ws.maxExtractWords.trim(), 10);
  }
  return request;
}

/** Clamp the selection into the fetched list (0 when the list is empty). */
export function selectCase(ws: CaseWorkspace, index: number): CaseWorkspace {
  const bounded = ws.cases.length === 0 ? 0 : Math.min(Math.max(index, 0), ws.cases.length - 1);
  return { ...ws, selectedIndex: bounded };
}

export function withCases(ws: CaseWorkspace, cases: CasePayload[]): CaseWorkspace {
  return { ...ws, cases, selectedIndex: 0 };
}
