/**
 * Highlight rendering: apply the API's half-open token spans to an extract.
 *
 * Tokens come from splitting the extract on whitespace, exactly as the
 * engine counted them; the spans are used as-is with no re-tokenization or
 * re-scoring on the client.
 */

export function tokenizeExtract(extract: string): string[] {
  return extract.split(/\s+/).filter((t) => t.length > 0);
}

export interface TokenRun {
  text: string;
  highlighted: boolean;
}

/** Group tokens into runs so adjacent marked tokens render as one span. */
export function tokenRuns(extract: string, spans: [number, number][]): TokenRun[] {
  const tokens = tokenizeExtract(extract);
  const marked = new Array<boolean>(tokens.length).fill(false);
  for (const [start, end] of spans) {
    for (let i = Math.max(0, start); i < Math.min(tokens.length, end); i++) {
      marked[i] = true;
    }
  }
  const runs: TokenRun[] = [];
  for (let i = 0; i < tokens.length; i++) {
    const last = runs[runs.length - 1];
    if (last && last.highlighted === marked[i]) {
      last.text += " " + tokens[i];
    } else {
      runs.push({ text: tokens[i], highlighted: marked[i] });
    }
  }
  return runs;
}

export function renderExtract(
  doc: Document,
  extract: string,
  spans: [number, number][],
): HTMLElement {
  const container = doc.createElement("p");
  container.className = "extract";
  const runs = tokenRuns(extract, spans);
  runs.forEach((run, i) => {
    if (i > 0) {
      container.appendChild(doc.createTextNode(" "));
    }
    if (run.highlighted) {
      const mark = doc.createElement("mark");
      mark.className = "hl";
      mark.textContent = run.text;
      container.appendChild(mark);
    } else {
      container.appendChild(doc.createTextNode(run.text));
    }
  });
  return container;
}
