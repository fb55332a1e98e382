// Labeling view: the active-learning batch with Keep/Remove buttons, a
// "load more" control that trains and fetches the next batch, and a review
// list of prior Remove labels for consistency checking.

import { ApiClient } from "../api";
import { button, clear, el } from "../dom";
import type { CommentRow, LabelValue } from "../types";

export interface LabelView {
  root: HTMLElement;
  refresh(): Promise<void>;
}

export function createLabelView(
  api: ApiClient,
  sid: string,
  options: { onError?: (message: string) => void; onWait?: (waiting: boolean) => void } = {},
): LabelView {
  const batchList = el("ul", { class: "batch-list", "data-testid": "label-batch" });
  const reviewList = el("ul", {
    class: "review-list",
    "data-testid": "remove-review",
  });
  const status = el("span", { class: "pane-status", "data-testid": "label-status" });

  const marks = new Map<string, LabelValue>();

  function batchItem(row: CommentRow): HTMLElement {
    const current = marks.get(row.id);
    const item = el(
      "li",
      { class: "batch-item", "data-comment-id": row.id },
      [el("span", { class: "comment-text" }, [row.text])],
    );
    for (const value of ["Keep", "Remove"] as LabelValue[]) {
      const attrs: Record<string, string> = {
        "data-testid": `mark-${value.toLowerCase()}`,
        class: current === value ? "selected" : "",
      };
      item.append(
        button(value, () => void mark(row, value), attrs),
      );
    }
    return item;
  }

  async function mark(row: CommentRow, label: LabelValue): Promise<void> {
    try {
      await api.labelMark(sid, row.id, label);
      marks.set(row.id, label);
      await renderFromState();
    } catch (err) {
      options.onError?.(err instanceof Error ? err.message : String(err));
    }
  }

  async function renderFromState(): Promise<void> {
    const state = await api.labelState(sid);
    marks.clear();
    for (const [cid, label] of Object.entries(state.labeled)) {
      marks.set(cid, label);
    }
    clear(batchList);
    for (const row of state.current_batch) {
      batchList.append(batchItem(row));
    }
    clear(reviewList);
    const removedIds = Object.entries(state.labeled)
      .filter(([, v]) => v === "Remove")
      .map(([cid]) => cid);
    if (removedIds.length > 0) {
      const { comments } = await api.commentsByIds(sid, removedIds);
      for (const row of comments) {
        const item = el("li", { class: "review-item", "data-comment-id": row.id }, [
          el("span", { class: "comment-text" }, [row.text]),
        ]);
        item.append(
          button("Relabel Keep", () => void mark(row, "Keep"), {
            "data-testid": "relabel-keep",
          }),
        );
        reviewList.append(item);
      }
    }
    status.textContent = `${marks.size} labeled, model ${state.model_trained ? "trained" : "not trained yet"}`;
  }

  async function loadMore(): Promise<void> {
    status.textContent = "training…";
    options.onWait?.(true);
    try {
      const response = await api.labelLoadMore(sid);
      clear(batchList);
      for (const row of response.batch) {
        batchList.append(batchItem(row));
      }
      status.textContent = `${response.labeled} labeled, model ${response.model_trained ? "trained" : "not trained yet"}`;
    } catch (err) {
      status.textContent = "load failed";
      options.onError?.(err instanceof Error ? err.message : String(err));
    } finally {
      options.onWait?.(false);
    }
  }

  const root = el("section", { class: "label-view" }, [
    el("header", {}, [
      el("h3", {}, ["Label examples"]),
      button("Load more examples", () => void loadMore(), {
        "data-testid": "load-more",
      }),
      status,
    ]),
    batchList,
    el("h4", {}, ["Labeled Remove (review for consistency)"]),
    reviewList,
  ]);

  return { root, refresh: renderFromState };
}
