// Client view state. Everything that classifies lives on the server; this
// is only which tab is open, which filter is active, and what the timer
// last reported.

import type {
  FilterName,
  LabelValue,
  PredictionRow,
  SessionSummary,
  StrategyName,
} from "./types";

export type ViewName =
  | "setup"
  | "ground_truth"
  | "label"
  | "rule"
  | "prompt"
  | "results";

export interface ViewState {
  view: ViewName;
  sessionId: string | null;
  summary: SessionSummary | null;
  filter: FilterName;
  resultsStrategy: StrategyName;
  busy: number;
}

export function initialState(): ViewState {
  return {
    view: "setup",
    sessionId: null,
    summary: null,
    filter: "all",
    resultsStrategy: "label",
    busy: 0,
  };
}

export type ResultsFilter = "all" | "false_positives" | "false_negatives";

/** Prediction rows to show in the results browser for a given filter. */
export function filterPredictions(
  rows: PredictionRow[],
  truth: Record<string, LabelValue>,
  filter: ResultsFilter,
): PredictionRow[] {
  switch (filter) {
    case "false_positives":
      return rows.filter(
        (r) => r.decision === "Remove" && truth[r.comment_id] === "Keep",
      );
    case "false_negatives":
      return rows.filter(
        (r) => r.decision === "Keep" && truth[r.comment_id] === "Remove",
      );
    default:
      return rows;
  }
}

/** Strategy tabs in the session's assigned order. */
export function strategyTabs(summary: SessionSummary | null): StrategyName[] {
  return summary ? summary.strategy_order : ["label", "rule", "prompt"];
}
