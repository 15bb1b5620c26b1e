/**
 * Typed client for the argweave HTTP API.
 *
 * The UI never computes similarity or path math itself: every number it
 * shows is echoed from these payloads. Case submissions allow one in-flight
 * request at a time; a new submission aborts the pending one.
 */

export interface Position {
  line: number;
  column: number;
}

export interface CaseRequestPayload {
  start: string;
  end: string;
  middles: string[];
  filter?: string;
  communities?: number[];
  keywords_include: string[];
  keywords_exclude: string[];
  max_extract_words?: number;
  cost_kind: string;
  lambda: number;
  k: number;
}

export interface CaseEntryPayload {
  entity_id: string;
  tag: string;
  citation: string;
  extract: string;
  highlight_spans: [number, number][];
}

export interface CasePayload {
  total_cost: number;
  total_extract_words: number;
  case_words: number;
  entries: CaseEntryPayload[];
  rendered: string;
}

export interface QueryRow {
  entity_id: string;
  score: number;
  abstract: string;
  citation: string;
  camp: string;
  arg_type: string;
  year: number;
}

export interface GraphStatsPayload {
  vertices: number;
  edges: number;
  average_degree: number;
}

export interface CommunityPayload {
  community_id: number;
  size: number;
  top_members: { entity_id: string; score: number; tag: string }[];
}

export class ApiError extends Error {
  code: string;
  position?: Position;

  constructor(code: string, message: string, position?: Position) {
    super(message);
    this.code = code;
    this.position = position;
  }
}

export const REQUEST_CANCELLED = "REQUEST_CANCELLED";

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function parseError(response: Response): Promise<ApiError> {
  try {
    const body = await response.json();
    if (body && body.error) {
      return new ApiError(body.error.code, body.error.message, body.error.position);
    }
  } catch {
    // fall through to the generic error
  }
  return new ApiError("HTTP_" + response.status, response.statusText);
}

export class ApiClient {
  private base: string;
  private fetchFn: FetchLike;
  private inflightCase: AbortController | null = null;

  constructor(base = "", fetchFn?: FetchLike) {
    this.base = base;
    this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
  }

  private async postJson<T>(path: string, body: unknown, signal?: AbortSignal): Promise<T> {
    const response = await this.fetchFn(this.base + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
      signal,
    });
    if (!response.ok) {
      throw await parseError(response);
    }
    return (await response.json()) as T;
  }

  private async getJson<T>(path: string): Promise<T> {
    const response = await this.fetchFn(this.base + path, { method: "GET" });
    if (!response.ok) {
      throw await parseError(response);
    }
    return (await response.json()) as T;
  }

  /** Submit a case request, cancelling any still-pending one. */
  async buildCase(request: CaseRequestPayload): Promise<CasePayload[]> {
    if (this.inflightCase) {
      this.inflightCase.abort();
    }
    const controller = new AbortController();
    this.inflightCase = controller;
    try {
      const body = await this.postJson<{ cases: CasePayload[] }>(
        "/api/case",
        request,
        controller.signal,
      );
      return body.cases;
    } catch (err) {
      if (controller.signal.aborted) {
        throw new ApiError(REQUEST_CANCELLED, "request superseded");
      }
      throw err;
    } finally {
      if (this.inflightCase === controller) {
        this.inflightCase = null;
      }
    }
  }

  async query(filter: string, limit: number): Promise<QueryRow[]> {
    const body = await this.postJson<{ results: QueryRow[] }>("/api/query", {
      filter,
      limit,
    });
    return body.results;
  }

  async stats(): Promise<GraphStatsPayload> {
    return this.getJson<GraphStatsPayload>("/api/graph/stats");
  }

  async communities(): Promise<CommunityPayload[]> {
    const body = await this.getJson<{ communities: CommunityPayload[] }>("/api/communities");
    return body.communities;
  }
}
