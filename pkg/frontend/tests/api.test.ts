import { describe, expect, it } from "vitest";

import { ApiClient, ApiError, REQUEST_CANCELLED } from "../src/api.js";

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

const CASE_REQUEST = {
  start: "a",
  end: "b",
  middles: [],
  keywords_include: [],
  keywords_exclude: [],
  cost_kind: "semantic_distance",
  lambda: 0.5,
  k: 1,
};

describe("ApiClient", () => {
  it("parses positioned error payloads", async () => {
    const client = new ApiClient("", async () =>
      jsonResponse(
        {
          error: {
            code: "FILTER_SYNTAX_ERROR",
            message: "expected a literal",
            position: { line: 1, column: 8 },
          },
        },
        400,
      ),
    );
    try {
      await client.query("year = ", 10);
      expect.unreachable("should have thrown");
    } catch (err) {
      expect(err).toBeInstanceOf(ApiError);
      const apiErr = err as ApiError;
      expect(apiErr.code).toBe("FILTER_SYNTAX_ERROR");
      expect(apiErr.position).toEqual({ line: 1, column: 8 });
    }
  });

  it("sends the case request body unchanged", async () => {
    let captured: unknown;
    const client = new ApiClient("", async (_url, init) => {
      captured = JSON.parse(String(init?.body));
      return jsonResponse({ cases: [] });
    });
    await client.buildCase({ ...CASE_REQUEST, filter: "year = 2013" });
    expect(captured).toEqual({ ...CASE_REQUEST, filter: "year = 2013" });
  });

  it("cancels the pending case request when a new one arrives", async () => {
    const gates: Array<() => void> = [];
    const seenSignals: AbortSignal[] = [];
    const client = new ApiClient("", (_url, init) => {
      seenSignals.push(init!.signal!);
      return new Promise<Response>((resolve, reject) => {
        gates.push(() => resolve(jsonResponse({ cases: [] })));
        init!.signal!.addEventListener("abort", () =>
          reject(new DOMException("aborted", "AbortError")),
        );
      });
    });

    const first = client.buildCase(CASE_REQUEST);
    const second = client.buildCase(CASE_REQUEST);
    expect(seenSignals[0].aborted).toBe(true);
    gates[1]();
    await expect(second).resolves.toEqual([]);
    await expect(first).rejects.toMatchObject({ code: REQUEST_CANCELLED });
  });

  it("non-case requests run independently of the case gate", async () => {
    const client = new ApiClient("", async (url) => {
      if (url.endsWith("/api/graph/stats")) {
        return jsonResponse({ vertices: 60, edges: 588, average_degree: 19.6 });
      }
      return jsonResponse({ results: [] });
    });
    const stats = await client.stats();
    expect(stats.vertices).toBe(60);
    expect(stats.average_degree).toBeCloseTo(19.6);
  });
});
