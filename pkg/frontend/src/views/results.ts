// Results view for the review phase: the test-set metrics table and a
// per-comment prediction browser with false-positive/negative filters,
// plus a report export.

import { ApiClient } from "../api";
import { button, clear, el, formatMetric } from "../dom";
import { filterPredictions, ResultsFilter } from "../state";
import type { LabelValue, PredictionRow, StrategyName } from "../types";
import { predictionListItem } from "./examples";

export interface ResultsView {
  root: HTMLElement;
  refresh(strategy: StrategyName): Promise<void>;
}

export function createResultsView(
  api: ApiClient,
  sid: string,
  options: { onError?: (message: string) => void } = {},
): ResultsView {
  const metricsTable = el("table", { class: "metrics", "data-testid": "metrics-table" });
  const list = el("ul", { class: "prediction-list", "data-testid": "results-list" });
  const status = el("span", { class: "pane-status" });

  let currentStrategy: StrategyName = "label";
  let rows: PredictionRow[] = [];
  let truth: Record<string, LabelValue> = {};
  let resultsFilter: ResultsFilter = "all";

  const filterSelect = el("select", { "data-testid": "results-filter" });
  for (const value of ["all", "false_positives", "false_negatives"]) {
    filterSelect.append(el("option", { value }, [value.replace("_", " ")]));
  }
  filterSelect.addEventListener("change", () => {
    resultsFilter = filterSelect.value as ResultsFilter;
    renderList();
  });

  const exportButton = button("Export report", () => void exportReport(), {
    "data-testid": "export-report",
  });

  function renderMetrics(payload: {
    counts: { tp: number; fp: number; fn: number; tn: number };
    metrics: { accuracy: number; precision: number; recall: number; f1: number };
  }): void {
    clear(metricsTable);
    const head = el("tr", {});
    const body = el("tr", {});
    const cells: [string, string][] = [
      ["accuracy", formatMetric(payload.metrics.accuracy)],
      ["precision", formatMetric(payload.metrics.precision)],
      ["recall", formatMetric(payload.metrics.recall)],
      ["f1", formatMetric(payload.metrics.f1)],
      ["tp", String(payload.counts.tp)],
      ["fp", String(payload.counts.fp)],
      ["fn", String(payload.counts.fn)],
      ["tn", String(payload.counts.tn)],
    ];
    for (const [name, value] of cells) {
      head.append(el("th", {}, [name]));
      body.append(el("td", { "data-metric": name }, [value]));
    }
    metricsTable.append(head, body);
  }

  function renderList(): void {
    clear(list);
    for (const row of filterPredictions(rows, truth, resultsFilter)) {
      const item = predictionListItem(row);
      const actual = truth[row.comment_id];
      if (actual !== undefined) {
        item.append(
          el("span", { class: "chip chip-truth" }, [`your label: ${actual}`]),
        );
      }
      list.append(item);
    }
    status.textContent = `${list.children.length} of ${rows.length} predictions`;
  }

  async function exportReport(): Promise<void> {
    try {
      const report = await api.report(sid);
      const blob = new Blob([JSON.stringify(report, null, 2)], {
        type: "application/json",
      });
      const anchor = el("a", {
        href: URL.createObjectURL(blob),
        download: `${sid}-report.json`,
      });
      anchor.click();
      URL.revokeObjectURL(anchor.href);
    } catch (err) {
      options.onError?.(err instanceof Error ? err.message : String(err));
    }
  }

  async function refresh(strategy: StrategyName): Promise<void> {
    currentStrategy = strategy;
    status.textContent = "scoring…";
    try {
      const payload = await api.metrics(sid, currentStrategy);
      renderMetrics(payload);
      let envelope = await api.apply(sid, currentStrategy, {
        target: "test",
        filter: "all",
        gesture: "review_example",
      });
      if (envelope.status === "pending") {
        envelope = await api.pollJob(sid, envelope);
      }
      rows = envelope.result?.results ?? [];
      truth = (await api.groundTruth(sid)).labels;
      renderList();
    } catch (err) {
      status.textContent = "scoring failed";
      options.onError?.(err instanceof Error ? err.message : String(err));
    }
  }

  const root = el("section", { class: "results-view" }, [
    el("header", {}, [
      el("h3", {}, ["Test-set results"]),
      filterSelect,
      exportButton,
      status,
    ]),
    metricsTable,
    list,
  ]);

  return { root, refresh };
}
