// Prompt editor: description textarea, positive/negative few-shot example
// lists, and the "improve" button that shows the rephrasing as an
// accept/reject suggestion instead of applying it.

import { ApiClient } from "../api";
import { button, clear, el } from "../dom";
import type { PromptRecord } from "../types";
import { createExamplePane, ExamplePane } from "./examples";

export interface PromptsView {
  root: HTMLElement;
  refresh(): Promise<void>;
  examplePane: ExamplePane;
}

export function createPromptsView(
  api: ApiClient,
  sid: string,
  options: { onError?: (message: string) => void } = {},
): PromptsView {
  const notice = el("p", { class: "notice", "data-testid": "prompt-notice" });
  const promptList = el("ul", { class: "prompt-list", "data-testid": "prompt-list" });
  const editor = el("div", { class: "prompt-editor" });
  const examplePane = createExamplePane(api, sid, "prompt", options);

  let editing: PromptRecord | null = null;
  let descriptionDraft = "";

  function setNotice(message: string): void {
    notice.textContent = message;
  }

  function exampleList(
    title: string,
    examples: string[],
    positive: boolean,
  ): HTMLElement {
    const list = el("ul", { class: "fewshot-list" });
    for (const text of examples) {
      list.append(el("li", {}, [el("span", { class: "comment-text" }, [text])]));
    }
    const input = el("input", {
      type: "text",
      placeholder: positive ? "example that should be removed" : "example to keep",
      "data-testid": positive ? "positive-input" : "negative-input",
    });
    const add = button("Add example", () => {
      const text = input.value.trim();
      if (!text || !editing) {
        setNotice(editing ? "Type an example first." : "Create the prompt first.");
        return;
      }
      void (async () => {
        try {
          const updated = await api.addFewshot(sid, editing!.prompt_id, text, positive);
          editing = updated;
          input.value = "";
          renderEditor();
          await renderPromptList();
        } catch (err) {
          options.onError?.(err instanceof Error ? err.message : String(err));
        }
      })();
    }, { "data-testid": positive ? "add-positive" : "add-negative" });
    return el("div", { class: "fewshot" }, [
      el("h4", {}, [title]), list, input, add,
    ]);
  }

  function renderEditor(): void {
    clear(editor);
    const description = el("textarea", {
      rows: "3",
      placeholder: "Describe the texts to remove…",
      "data-testid": "prompt-description",
    });
    description.value = descriptionDraft;
    description.addEventListener("input", () => {
      descriptionDraft = description.value;
    });
    editor.append(el("label", {}, ["Description ", description]));

    editor.append(
      button(editing ? "Save prompt" : "Create prompt", () => void save(), {
        "data-testid": "save-prompt",
      }),
    );

    if (editing) {
      const improve = button("Improve", () => void askImprove(), {
        "data-testid": "improve-button",
      });
      editor.append(improve);
      editor.append(suggestionBox);
      editor.append(
        exampleList("Examples that should be removed", editing.positive_examples, true),
      );
      editor.append(
        exampleList("Examples that should be kept", editing.negative_examples, false),
      );
      editor.append(
        button("New prompt", () => {
          editing = null;
          descriptionDraft = "";
          renderEditor();
        }, { class: "link" }),
      );
    }
  }

  const suggestionBox = el("div", {
    class: "improve-suggestion",
    "data-testid": "improve-suggestion",
  });

  async function askImprove(): Promise<void> {
    if (!editing) return;
    try {
      const { suggestion } = await api.improvePrompt(sid, editing.prompt_id);
      clear(suggestionBox);
      suggestionBox.append(
        el("p", {}, ["Suggested rephrasing:"]),
        el("blockquote", { "data-testid": "suggestion-text" }, [suggestion]),
        button("Accept", () => {
          descriptionDraft = suggestion;
          void saveDescription(suggestion);
          clear(suggestionBox);
        }, { "data-testid": "accept-improve" }),
        button("Reject", () => {
          clear(suggestionBox);
        }, { "data-testid": "reject-improve" }),
      );
    } catch (err) {
      options.onError?.(err instanceof Error ? err.message : String(err));
    }
  }

  async function saveDescription(description: string): Promise<void> {
    if (!editing) return;
    try {
      editing = await api.editPrompt(sid, editing.prompt_id, {
        description,
        positive_examples: editing.positive_examples,
        negative_examples: editing.negative_examples,
      });
      renderEditor();
      await renderPromptList();
    } catch (err) {
      options.onError?.(err instanceof Error ? err.message : String(err));
    }
  }

  async function save(): Promise<void> {
    const description = descriptionDraft.trim();
    if (!description) {
      setNotice("Describe what to remove first.");
      return;
    }
    try {
      if (editing) {
        await saveDescription(description);
        setNotice("Prompt saved.");
      } else {
        editing = await api.createPrompt(sid, {
          description,
          positive_examples: [],
          negative_examples: [],
        });
        setNotice(`Created prompt ${editing.prompt_id}.`);
        renderEditor();
        await renderPromptList();
      }
    } catch (err) {
      options.onError?.(err instanceof Error ? err.message : String(err));
    }
  }

  async function renderPromptList(): Promise<void> {
    const { prompts } = await api.listPrompts(sid);
    clear(promptList);
    for (const record of prompts) {
      const item = el(
        "li",
        { class: "prompt-item", "data-prompt-id": record.prompt_id },
        [
          el("strong", {}, [record.prompt_id]),
          el("span", { class: "comment-text" }, [` ${record.description}`]),
        ],
      );
      item.append(
        button("Edit", () => {
          editing = record;
          descriptionDraft = record.description;
          renderEditor();
        }, { "data-testid": "edit-prompt" }),
      );
      item.append(
        button("Delete", () => {
          void (async () => {
            try {
              await api.deletePrompt(sid, record.prompt_id);
              if (editing?.prompt_id === record.prompt_id) {
                editing = null;
                descriptionDraft = "";
              }
              renderEditor();
              await renderPromptList();
            } catch (err) {
              options.onError?.(err instanceof Error ? err.message : String(err));
            }
          })();
        }, { "data-testid": "delete-prompt" }),
      );
      promptList.append(item);
    }
  }

  async function refresh(): Promise<void> {
    await renderPromptList();
    renderEditor();
  }

  const root = el("section", { class: "prompts-view split" }, [
    el("div", { class: "pane" }, [
      el("h3", {}, ["Prompts"]),
      notice,
      promptList,
      editor,
    ]),
    examplePane.root,
  ]);

  return { root, refresh, examplePane };
}
