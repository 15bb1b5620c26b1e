/**
 * Single-page case builder over the argweave API.
 *
 * The case-builder form is the primary screen; the evidence explorer feeds
 * its results back into the argument inputs, and the stats/communities
 * panels are read-only context. All similarity and path numbers shown come
 * straight from API payloads.
 */

import { ApiClient, ApiError, CasePayload, Position, QueryRow, REQUEST_CANCELLED } from "./api.js";
import { renderExtract } from "./highlight.js";
import {
  CaseWorkspace,
  emptyWorkspace,
  selectCase,
  toCaseRequest,
  withCases,
  workspaceProblems,
} from "./workspace.js";

export interface App {
  workspace: CaseWorkspace;
  submitCase(): Promise<void>;
  explore(): Promise<void>;
  root: HTMLElement;
}

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

/** Error text plus a caret line pointing at the reported column. */
export function positionPreview(source: string, position: Position): string {
  const lines = source.split("\n");
  const line = lines[Math.min(position.line, lines.length) - 1] ?? "";
  return line + "\n" + " ".repeat(Math.max(0, position.column - 1)) + "^";
}

export function createApp(root: HTMLElement, client: ApiClient): App {
  const doc = root.ownerDocument;
  let workspace = emptyWorkspace();
  let focusedArgument: HTMLInputElement | null = null;

  root.innerHTML = "";
  const layout = el(doc, "div", "layout");
  root.appendChild(layout);

  // ---- case builder -------------------------------------------------------
  const builder = el(doc, "section", "case-builder");
  layout.appendChild(builder);
  builder.appendChild(el(doc, "h2", undefined, "Case builder"));

  const form = el(doc, "form", "case-form");
  form.id = "case-form";
  builder.appendChild(form);

  function argumentInput(id: string, label: string, placeholder: string): HTMLInputElement {
    const wrap = el(doc, "label", "field", label);
    const input = el(doc, "input");
    input.id = id;
    input.placeholder = placeholder;
    input.addEventListener("focus", () => {
      focusedArgument = input;
    });
    wrap.appendChild(input);
    form.appendChild(wrap);
    return input;
  }

  const startInput = argumentInput("arg-start", "Start argument", "first argument of the case");
  focusedArgument = startInput;

  const middlesWrap = el(doc, "div", "middles");
  middlesWrap.id = "middles";
  form.appendChild(middlesWrap);
  const middleInputs: HTMLInputElement[] = [];

  const addMiddle = el(doc, "button", "add-middle", "+ middle argument");
  addMiddle.type = "button";
  addMiddle.id = "add-middle";
  addMiddle.addEventListener("click", () => {
    const input = el(doc, "input");
    input.className = "middle-input";
    input.placeholder = `middle argument ${middleInputs.length + 1}`;
    input.addEventListener("focus", () => {
      focusedArgument = input;
    });
    middleInputs.push(input);
    middlesWrap.appendChild(input);
  });
  form.appendChild(addMiddle);

  const endInput = argumentInput("arg-end", "End argument", "final argument of the case");

  const filterLabel = el(doc, "label", "field", "Filter (optional)");
  const filterInput = el(doc, "textarea");
  filterInput.id = "constraint-filter";
  filterInput.placeholder = "camp = 'Gonzaga' AND year = 2013 AND SIMILAR('environment')";
  filterLabel.appendChild(filterInput);
  form.appendChild(filterLabel);

  const filterError = el(doc, "pre", "field-error");
  filterError.id = "filter-error";
  filterError.hidden = true;
  form.appendChild(filterError);

  function smallField(id: string, label: string): HTMLInputElement {
    const wrap = el(doc, "label", "field small", label);
    const input = el(doc, "input");
    input.id = id;
    wrap.appendChild(input);
    form.appendChild(wrap);
    return input;
  }

  const communitiesInput = smallField("constraint-communities", "Communities (ids, comma-separated)");
  const includeInput = smallField("constraint-include", "Must include keywords");
  const excludeInput = smallField("constraint-exclude", "Must exclude keywords");
  const maxWordsInput = smallField("constraint-max-words", "Max extract words");

  const costLabel = el(doc, "label", "field small", "Cost function");
  const costSelect = el(doc, "select");
  costSelect.id = "cost-kind";
  for (const [value, text] of [
    ["semantic_distance", "semantic distance"],
    ["length_penalized", "length penalized"],
  ]) {
    const option = el(doc, "option", undefined, text);
    option.value = value;
    costSelect.appendChild(option);
  }
  costLabel.appendChild(costSelect);
  form.appendChild(costLabel);

  const lambdaInput = smallField("cost-lambda", "Lambda");
  lambdaInput.value = "0.5";
  const kInput = smallField("case-k", "Alternatives (k)");
  kInput.value = "3";

  const submit = el(doc, "button", "submit", "Build cases");
  submit.type = "submit";
  submit.id = "submit-case";
  form.appendChild(submit);

  const caseError = el(doc, "div", "error-box");
  caseError.id = "case-error";
  caseError.hidden = true;
  builder.appendChild(caseError);

  const caseList = el(doc, "div", "case-list");
  caseList.id = "case-list";
  builder.appendChild(caseList);

  // ---- evidence explorer ---------------------------------------------------
  const explorer = el(doc, "section", "explorer");
  layout.appendChild(explorer);
  explorer.appendChild(el(doc, "h2", undefined, "Evidence explorer"));

  const exploreForm = el(doc, "form", "explore-form");
  exploreForm.id = "explore-form";
  explorer.appendChild(exploreForm);

  const exploreFilter = el(doc, "input");
  exploreFilter.id = "explore-filter";
  exploreFilter.placeholder = "filter, e.g. year >= 2015 AND SIMILAR('energy')";
  exploreForm.appendChild(exploreFilter);

  const exploreLimit = el(doc, "input");
  exploreLimit.id = "explore-limit";
  exploreLimit.value = "20";
  exploreForm.appendChild(exploreLimit);

  const exploreSubmit = el(doc, "button", undefined, "Search");
  exploreSubmit.type = "submit";
  exploreSubmit.id = "explore-submit";
  exploreForm.appendChild(exploreSubmit);

  const exploreError = el(doc, "pre", "field-error");
  exploreError.id = "explore-error";
  exploreError.hidden = true;
  explorer.appendChild(exploreError);

  const exploreTable = el(doc, "table", "explore-table");
  exploreTable.id = "explore-table";
  explorer.appendChild(exploreTable);

  // ---- side panels -----------------------------------------------------------
  const panels = el(doc, "aside", "panels");
  layout.appendChild(panels);
  const statsPanel = el(doc, "div", "panel");
  statsPanel.id = "stats-panel";
  panels.appendChild(statsPanel);
  const communitiesPanel = el(doc, "div", "panel");
  communitiesPanel.id = "communities-panel";
  panels.appendChild(communitiesPanel);

  // ---- rendering ------------------------------------------------------------

  function renderCaseCards(): void {
    caseList.innerHTML = "";
    workspace.cases.forEach((c: CasePayload, index: number) => {
      const card = el(doc, "article", "case-card");
      card.dataset.index = String(index);
      if (index === workspace.selectedIndex) card.classList.add("selected");

      const header = el(doc, "header", "case-header");
      header.appendChild(el(doc, "strong", undefined, `case ${index + 1}`));
      const cost = el(doc, "span", "case-cost", `cost ${c.total_cost.toFixed(4)}`);
      cost.dataset.cost = String(c.total_cost);
      header.appendChild(cost);
      const words = el(doc, "span", "case-words", `${c.case_words} words`);
      words.dataset.words = String(c.case_words);
      header.appendChild(words);
      header.addEventListener("click", () => {
        workspace = selectCase(workspace, index);
        renderCaseCards();
      });
      card.appendChild(header);

      if (index === workspace.selectedIndex) {
        const body = el(doc, "div", "case-body");
        c.entries.forEach((entry, entryIndex) => {
          if (entryIndex > 0) {
            body.appendChild(el(doc, "div", "next-marker", "next"));
          }
          const block = el(doc, "div", "entry");
          block.appendChild(el(doc, "h4", "tag", entry.tag));
          block.appendChild(el(doc, "div", "citation", entry.citation));
          block.appendChild(renderExtract(doc, entry.extract, entry.highlight_spans));
          body.appendChild(block);
        });
        // export is client-side only; no server-side saving
        const download = el(doc, "a", "download-case", "download case text");
        download.setAttribute(
          "href",
          "data:text/plain;charset=utf-8," + encodeURIComponent(c.rendered),
        );
        download.setAttribute("download", `case-${index + 1}.txt`);
        body.appendChild(download);
        card.appendChild(body);
      }
      caseList.appendChild(card);
    });
  }

  function showPositionedError(
    target: HTMLElement,
    source: string,
    err: ApiError,
  ): void {
    const position = err.position;
    let text = `${err.code}: ${err.message}`;
    if (position) {
      text += ` (line ${position.line}, column ${position.column})\n`;
      text += positionPreview(source, position);
      target.dataset.line = String(position.line);
      target.dataset.column = String(position.column);
    }
    target.textContent = text;
    target.hidden = false;
  }

  function clearErrors(): void {
    for (const node of [filterError, caseError, exploreError]) {
      node.hidden = true;
      node.textContent = "";
      delete node.dataset.line;
      delete node.dataset.column;
    }
  }

  function readWorkspaceFromForm(): void {
    workspace = {
      ...workspace,
      start: startInput.value,
      middles: middleInputs.map((m) => m.value),
      end: endInput.value,
      filterText: filterInput.value,
      communitiesText: communitiesInput.value,
      keywordsIncludeText: includeInput.value,
      keywordsExcludeText: excludeInput.value,
      maxExtractWords: maxWordsInput.value,
      costKind: costSelect.value as CaseWorkspace["costKind"],
      lambda: parseFloat(lambdaInput.value || "0.5"),
      k: parseInt(kInput.value || "1", 10),
    };
  }

  async function submitCase(): Promise<void> {
    clearErrors();
    readWorkspaceFromForm();
    const problems = workspaceProblems(workspace);
    if (problems.length > 0) {
      caseError.textContent = problems.join("; ");
      caseError.hidden = false;
      return;
    }
    try {
      const cases = await client.buildCase(toCaseRequest(workspace));
      workspace = withCases(workspace, cases);
      renderCaseCards();
    } catch (err) {
      if (err instanceof ApiError) {
        if (err.code === REQUEST_CANCELLED) return;
        if (err.position && workspace.filterText.trim()) {
          showPositionedError(filterError, workspace.filterText, err);
        } else {
          caseError.textContent = `${err.code}: ${err.message}`;
          caseError.hidden = false;
        }
        return;
      }
      caseError.textContent = String(err);
      caseError.hidden = false;
    }
  }

  function renderQueryRows(rows: QueryRow[]): void {
    exploreTable.innerHTML = "";
    const head = el(doc, "tr");
    for (const column of ["Tag", "Citation", "Camp", "Year", "Score"]) {
      head.appendChild(el(doc, "th", undefined, column));
    }
    exploreTable.appendChild(head);
    rows.forEach((row) => {
      const tr = el(doc, "tr", "result-row");
      tr.dataset.entityId = row.entity_id;
      tr.appendChild(el(doc, "td", "result-tag", row.abstract));
      tr.appendChild(el(doc, "td", undefined, row.citation));
      tr.appendChild(el(doc, "td", undefined, row.camp));
      tr.appendChild(el(doc, "td", undefined, String(row.year)));
      const score = el(doc, "td", "result-score", row.score.toFixed(4));
      score.dataset.score = String(row.score);
      tr.appendChild(score);
      tr.addEventListener("click", () => {
        const target = focusedArgument ?? startInput;
        target.value = row.abstract;
      });
      exploreTable.appendChild(tr);
    });
  }

  async function explore(): Promise<void> {
    clearErrors();
    const limit = parseInt(exploreLimit.value || "20", 10);
    try {
      renderQueryRows(await client.query(exploreFilter.value, limit));
    } catch (err) {
      if (err instanceof ApiError) {
        showPositionedError(exploreError, exploreFilter.value, err);
        return;
      }
      exploreError.textContent = String(err);
      exploreError.hidden = false;
    }
  }

  async function loadPanels(): Promise<void> {
    try {
      const stats = await client.stats();
      statsPanel.innerHTML = "";
      statsPanel.appendChild(el(doc, "h3", undefined, "Graph"));
      statsPanel.appendChild(
        el(
          doc,
          "div",
          undefined,
          `${stats.vertices} vertices, ${stats.edges} edges, average degree ` +
            `${stats.average_degree.toFixed(2)}`,
        ),
      );
    } catch {
      statsPanel.textContent = "graph stats unavailable";
    }
    try {
      const communities = await client.communities();
      communitiesPanel.innerHTML = "";
      communitiesPanel.appendChild(el(doc, "h3", undefined, "Communities"));
      for (const community of communities) {
        const block = el(doc, "div", "community");
        block.appendChild(
          el(doc, "strong", undefined, `#${community.community_id} (${community.size})`),
        );
        for (const member of community.top_members.slice(0, 3)) {
          block.appendChild(el(doc, "div", "member", member.tag));
        }
        communitiesPanel.appendChild(block);
      }
    } catch {
      communitiesPanel.textContent = "communities unavailable";
    }
  }

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    void submitCase();
  });
  exploreForm.addEventListener("submit", (event) => {
    event.preventDefault();
    void explore();
  });

  void loadPanels();

  const app: App = {
    get workspace() {
      return workspace;
    },
    set workspace(value: CaseWorkspace) {
      workspace = value;
    },
    submitCase,
    explore,
    root,
  };
  return app;
}
