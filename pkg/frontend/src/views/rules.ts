// Rule builder: up to two include condition editors plus one exception,
// phrase chips, a spelling-variant toggle, and LLM-backed phrase
// suggestions. The example pane on the side shows rule hits with the
// triggering phrases highlighted.

import { ApiClient } from "../api";
import { button, clear, el } from "../dom";
import type { ConditionBody, RuleRecord, VariantFlags } from "../types";
import { createExamplePane, ExamplePane } from "./examples";

const MAX_INCLUDES = 2;

const NO_FLAGS: VariantFlags = {
  repeated_letters: false,
  case_insensitive: false,
  char_substitution: false,
  noun_forms: false,
  verb_forms: false,
};

interface ConditionDraft {
  phrases: string[];
  allVariants: boolean;
}

interface RuleDraft {
  ruleId: string | null;
  name: string;
  includes: ConditionDraft[];
  exclude: ConditionDraft | null;
}

function emptyDraft(): RuleDraft {
  return {
    ruleId: null,
    name: "",
    includes: [{ phrases: [], allVariants: false }],
    exclude: null,
  };
}

function draftFromRecord(record: RuleRecord): RuleDraft {
  const toDraft = (c: { phrases: string[]; flags: VariantFlags }): ConditionDraft => ({
    phrases: [...c.phrases],
    allVariants: Object.values(c.flags).every(Boolean),
  });
  return {
    ruleId: record.rule_id,
    name: record.name,
    includes: record.includes.map(toDraft),
    exclude: record.exclude ? toDraft(record.exclude) : null,
  };
}

function toConditionBody(draft: ConditionDraft): ConditionBody {
  const flags = draft.allVariants
    ? {
        repeated_letters: true,
        case_insensitive: true,
        char_substitution: true,
        noun_forms: true,
        verb_forms: true,
      }
    : NO_FLAGS;
  return { phrases: draft.phrases, flags };
}

export interface RulesView {
  root: HTMLElement;
  refresh(): Promise<void>;
  examplePane: ExamplePane;
}

export function createRulesView(
  api: ApiClient,
  sid: string,
  options: { onError?: (message: string) => void } = {},
): RulesView {
  let draft = emptyDraft();
  const notice = el("p", { class: "notice", "data-testid": "rule-notice" });
  const ruleList = el("ul", { class: "rule-list", "data-testid": "rule-list" });
  const editor = el("div", { class: "rule-editor" });
  const examplePane = createExamplePane(api, sid, "rule", options);

  function setNotice(message: string): void {
    notice.textContent = message;
  }

  function conditionEditor(
    title: string,
    condition: ConditionDraft,
    onRemoveCondition: (() => void) | null,
  ): HTMLElement {
    const chipRow = el("div", { class: "chips" });
    for (const [index, phrase] of condition.phrases.entries()) {
      const chip = el("span", { class: "chip" }, [phrase]);
      chip.append(
        button("×", () => {
          condition.phrases.splice(index, 1);
          renderEditor();
        }, { class: "chip-remove" }),
      );
      chipRow.append(chip);
    }
    const input = el("input", {
      type: "text",
      placeholder: "add phrase",
      "data-testid": "phrase-input",
    });
    const addButton = button("Add phrase", () => {
      const phrase = input.value.trim();
      if (!phrase) return;
      condition.phrases.push(phrase);
      input.value = "";
      renderEditor();
    }, { "data-testid": "add-phrase" });

    const suggestButton = button("Similar phrases", () => {
      if (condition.phrases.length === 0) {
        setNotice("Add a phrase first, then ask for similar ones.");
        return;
      }
      void (async () => {
        try {
          const { suggestions } = await api.suggestPhrases(sid, condition.phrases);
          clear(suggestionRow);
          if (suggestions.length === 0) {
            suggestionRow.append(el("span", { class: "muted" }, ["no suggestions"]));
          }
          for (const phrase of suggestions) {
            suggestionRow.append(
              button(phrase, () => {
                condition.phrases.push(phrase);
                renderEditor();
              }, { class: "suggestion", "data-testid": "suggestion" }),
            );
          }
        } catch (err) {
          options.onError?.(err instanceof Error ? err.message : String(err));
        }
      })();
    }, { "data-testid": "suggest-phrases" });

    const suggestionRow = el("div", { class: "suggestions", "data-testid": "suggestion-row" });

    const header = el("header", {}, [el("strong", {}, [title])]);
    if (onRemoveCondition) {
      header.append(button("Remove condition", onRemoveCondition, { class: "link" }));
    }
    return el("fieldset", { class: "condition" }, [
      header, chipRow, input, addButton, suggestButton, suggestionRow,
    ]);
  }

  function renderEditor(): void {
    clear(editor);
    const nameInput = el("input", {
      type: "text",
      value: draft.name,
      placeholder: "rule name",
      "data-testid": "rule-name",
    });
    nameInput.addEventListener("input", () => {
      draft.name = nameInput.value;
    });
    editor.append(el("label", {}, ["Rule name ", nameInput]));

    draft.includes.forEach((condition, index) => {
      editor.append(
        conditionEditor(
          `Include condition ${index + 1}`,
          condition,
          draft.includes.length > 1
            ? () => {
                draft.includes.splice(index, 1);
                renderEditor();
              }
            : null,
        ),
      );
    });

    const addInclude = button("Add include condition", () => {
      if (draft.includes.length >= MAX_INCLUDES) {
        setNotice(
          `A rule takes at most ${MAX_INCLUDES} include conditions, to keep rules simple.`,
        );
        return;
      }
      draft.includes.push({ phrases: [], allVariants: false });
      renderEditor();
    }, { "data-testid": "add-include" });
    if (draft.includes.length >= MAX_INCLUDES) {
      addInclude.disabled = true;
      addInclude.title = `at most ${MAX_INCLUDES} include conditions`;
    }
    editor.append(addInclude);

    if (draft.exclude) {
      editor.append(
        conditionEditor("Exception (exclude)", draft.exclude, () => {
          draft.exclude = null;
          renderEditor();
        }),
      );
    } else {
      editor.append(
        button("Add exception", () => {
          draft.exclude = { phrases: [], allVariants: false };
          renderEditor();
        }, { "data-testid": "add-exclude" }),
      );
    }

    const variantToggle = el("input", {
      type: "checkbox",
      "data-testid": "variant-toggle",
    });
    variantToggle.checked = draft.includes.every((c) => c.allVariants);
    variantToggle.addEventListener("change", () => {
      const enabled = variantToggle.checked;
      for (const condition of draft.includes) condition.allVariants = enabled;
      if (draft.exclude) draft.exclude.allVariants = enabled;
      if (draft.ruleId) {
        void (async () => {
          try {
            // one gesture, one call: the toggle response carries the
            // re-applied example pane
            const response = await api.toggleVariants(sid, draft.ruleId!, enabled, {
              target: "train_page",
              filter: examplePane.currentFilter(),
              limit: 20,
            });
            if (response.predictions) {
              examplePane.renderRows(response.predictions.results);
            }
          } catch (err) {
            options.onError?.(err instanceof Error ? err.message : String(err));
          }
        })();
      }
    });
    editor.append(
      el("label", { class: "variant-label" }, [
        variantToggle,
        " detect spelling variants (repeats, look-alikes, case, noun/verb forms)",
      ]),
    );

    editor.append(
      button(draft.ruleId ? "Save rule" : "Create rule", () => void save(), {
        "data-testid": "save-rule",
      }),
    );
    if (draft.ruleId) {
      editor.append(
        button("New rule", () => {
          draft = emptyDraft();
          renderEditor();
        }, { class: "link" }),
      );
    }
  }

  async function save(): Promise<void> {
    if (!draft.name.trim()) {
      setNotice("Give the rule a name.");
      return;
    }
    if (draft.includes.some((c) => c.phrases.length === 0)) {
      setNotice("Every include condition needs at least one phrase.");
      return;
    }
    if (draft.exclude && draft.exclude.phrases.length === 0) {
      setNotice("The exception needs at least one phrase (or remove it).");
      return;
    }
    const body = {
      name: draft.name.trim(),
      includes: draft.includes.map(toConditionBody),
      exclude: draft.exclude ? toConditionBody(draft.exclude) : null,
    };
    try {
      const saved = draft.ruleId
        ? await api.editRule(sid, draft.ruleId, body)
        : await api.createRule(sid, body);
      draft = draftFromRecord(saved);
      setNotice(`Saved rule "${saved.name}".`);
      await renderRuleList();
      renderEditor();
      await examplePane.refresh();
    } catch (err) {
      options.onError?.(err instanceof Error ? err.message : String(err));
    }
  }

  async function renderRuleList(): Promise<void> {
    const { rules } = await api.listRules(sid);
    clear(ruleList);
    for (const record of rules) {
      const item = el("li", { class: "rule-item", "data-rule-id": record.rule_id }, [
        el("strong", {}, [record.name]),
        el("span", { class: "muted" }, [
          ` ${record.includes.map((c) => c.phrases.length).join("+")} phrases`,
        ]),
      ]);
      item.append(
        button("Edit", () => {
          draft = draftFromRecord(record);
          renderEditor();
        }, { "data-testid": "edit-rule" }),
      );
      item.append(
        button("Delete", () => {
          void (async () => {
            try {
              await api.deleteRule(sid, record.rule_id);
              if (draft.ruleId === record.rule_id) draft = emptyDraft();
              await renderRuleList();
              renderEditor();
              await examplePane.refresh();
            } catch (err) {
              options.onError?.(err instanceof Error ? err.message : String(err));
            }
          })();
        }, { "data-testid": "delete-rule" }),
      );
      ruleList.append(item);
    }
  }

  async function refresh(): Promise<void> {
    await renderRuleList();
    renderEditor();
  }

  const root = el("section", { class: "rules-view split" }, [
    el("div", { class: "pane" }, [
      el("h3", {}, ["Rules"]),
      notice,
      ruleList,
      editor,
    ]),
    examplePane.root,
  ]);

  return { root, refresh, examplePane };
}
