// Shared example pane: predictions from the training set with per-strategy
// explanations, filterable to all / removed / approved.

import { ApiClient } from "../api";
import { button, clear, el, highlightSpans } from "../dom";
import type { FilterName, PredictionRow, StrategyName } from "../types";

export interface ExamplePane {
  root: HTMLElement;
  /** Re-apply the classifier; logs one gesture of the given kind. */
  refresh(gesture?: string): Promise<void>;
  /** Render rows that arrived on another call's response. */
  renderRows(rows: PredictionRow[]): void;
  currentFilter(): FilterName;
}

export function explanationNode(row: PredictionRow): HTMLElement {
  const wrap = el("span", { class: "explanation" });
  const exp = row.explanation;
  if (exp.rule !== undefined) {
    wrap.append(el("span", { class: "chip chip-rule" }, [`rule: ${exp.rule}`]));
    for (const hit of exp.triggered ?? []) {
      wrap.append(el("span", { class: "chip chip-phrase" }, [`"${hit.phrase}"`]));
    }
  } else if (exp.prompts !== undefined) {
    for (const pid of exp.prompts) {
      wrap.append(el("span", { class: "chip chip-prompt" }, [`prompt: ${pid}`]));
    }
  } else if (exp.p_remove !== undefined) {
    wrap.append(
      el("span", { class: "chip chip-prob" }, [`p(remove)=${exp.p_remove.toFixed(3)}`]),
    );
  }
  if (exp.degraded) {
    wrap.append(el("span", { class: "chip chip-degraded" }, ["degraded"]));
  }
  return wrap;
}

export function predictionListItem(row: PredictionRow): HTMLElement {
  const textNode = el("span", { class: "comment-text" });
  const spans = (row.explanation.triggered ?? []).map((t) => ({
    start: t.start,
    end: t.end,
  }));
  textNode.append(highlightSpans(row.text, spans));
  return el(
    "li",
    {
      class: `prediction ${row.decision === "Remove" ? "removed" : "approved"}`,
      "data-comment-id": row.comment_id,
      "data-decision": row.decision,
    },
    [
      el("span", { class: `decision decision-${row.decision.toLowerCase()}` }, [
        row.decision,
      ]),
      textNode,
      explanationNode(row),
    ],
  );
}

export function createExamplePane(
  api: ApiClient,
  sid: string,
  strategy: StrategyName,
  options: { limit?: number; onError?: (message: string) => void } = {},
): ExamplePane {
  const limit = options.limit ?? 20;
  let filter: FilterName = "all";

  const list = el("ul", { class: "prediction-list", "data-testid": "example-list" });
  const status = el("span", { class: "pane-status" });

  const filterSelect = el("select", { "data-testid": "example-filter" }, []);
  for (const value of ["all", "removed", "approved"] as FilterName[]) {
    filterSelect.append(el("option", { value }, [value]));
  }
  filterSelect.addEventListener("change", () => {
    filter = filterSelect.value as FilterName;
    void refresh("filter_view");
  });

  function renderRows(rows: PredictionRow[]): void {
    clear(list);
    for (const row of rows) {
      list.append(predictionListItem(row));
    }
    status.textContent = `${rows.length} shown`;
  }

  async function refresh(gesture = "apply_classifier"): Promise<void> {
    status.textContent = "applying…";
    try {
      let envelope = await api.apply(sid, strategy, {
        target: "train_page",
        filter,
        limit,
        gesture,
      });
      if (envelope.status === "pending") {
        envelope = await api.pollJob(sid, envelope);
      }
      renderRows(envelope.result?.results ?? []);
    } catch (err) {
      status.textContent = "apply failed";
      options.onError?.(err instanceof Error ? err.message : String(err));
    }
  }

  const root = el("section", { class: "example-pane" }, [
    el("header", {}, [
      el("h3", {}, ["Examples"]),
      filterSelect,
      button("Apply classifier", () => void refresh(), {
        "data-testid": "apply-button",
      }),
      status,
    ]),
    list,
  ]);
  return { root, refresh, renderRows, currentFilter: () => filter };
}
