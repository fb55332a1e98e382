// Ground-truth stage: label every test comment Keep/Remove, revising
// freely until the set is finalized.

import { ApiClient } from "../api";
import { button, clear, el } from "../dom";
import type { CommentRow, LabelValue } from "../types";

export interface GroundTruthView {
  root: HTMLElement;
  refresh(): Promise<void>;
}

export function createGroundTruthView(
  api: ApiClient,
  sid: string,
  options: { onError?: (message: string) => void; onFinalized?: () => void } = {},
): GroundTruthView {
  const list = el("ul", { class: "gt-list", "data-testid": "gt-list" });
  const status = el("span", { class: "pane-status", "data-testid": "gt-status" });
  let labels: Record<string, LabelValue> = {};
  let frozen = false;

  function item(row: CommentRow): HTMLElement {
    const current = labels[row.id];
    const node = el("li", { class: "gt-item", "data-comment-id": row.id }, [
      el("span", { class: "comment-text" }, [row.text]),
    ]);
    for (const value of ["Keep", "Remove"] as LabelValue[]) {
      const mark = button(value, () => {
        void (async () => {
          try {
            await api.submitGroundTruth(sid, { [row.id]: value });
            labels[row.id] = value;
            await refresh();
          } catch (err) {
            options.onError?.(err instanceof Error ? err.message : String(err));
          }
        })();
      }, {
        "data-testid": `gt-${value.toLowerCase()}`,
        class: current === value ? "selected" : "",
      });
      if (frozen) mark.disabled = true;
      node.append(mark);
    }
    return node;
  }

  async function refresh(): Promise<void> {
    const [{ comments, total }, gt] = await Promise.all([
      api.comments(sid, { split: "test", limit: 500 }),
      api.groundTruth(sid),
    ]);
    labels = gt.labels;
    frozen = gt.frozen;
    clear(list);
    for (const row of comments) list.append(item(row));
    status.textContent = frozen
      ? "finalized"
      : `${Object.keys(labels).length} of ${total} labeled`;
  }

  const finalize = button("Finalize ground truth", () => {
    void (async () => {
      try {
        await api.finalizeGroundTruth(sid);
        await refresh();
        options.onFinalized?.();
      } catch (err) {
        options.onError?.(err instanceof Error ? err.message : String(err));
      }
    })();
  }, { "data-testid": "gt-finalize" });

  const root = el("section", { class: "gt-view" }, [
    el("header", {}, [
      el("h3", {}, ["Label your test set"]),
      el("p", { class: "muted" }, [
        "Decide Keep or Remove for every comment. Stay consistent; revise earlier decisions if your criteria change.",
      ]),
      finalize,
      status,
    ]),
    list,
  ]);

  return { root, refresh };
}
