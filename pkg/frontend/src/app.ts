// Application shell: session setup, the strategy tabs in assigned order,
// phase controls, the active-time display, and view switching. All state
// that matters lives on the server; this file only routes gestures to the
// API client and re-renders from responses.

import { ApiClient } from "./api";
import { button, clear, el, formatTimer } from "./dom";
import { initialState, strategyTabs, ViewState } from "./state";
import type { SessionSummary, StrategyName } from "./types";
import { createGroundTruthView } from "./views/groundtruth";
import { createLabelView } from "./views/label";
import { createPromptsView } from "./views/prompts";
import { createResultsView } from "./views/results";
import { createRulesView } from "./views/rules";

export interface AppOptions {
  baseUrl?: string;
  /** Poll the session summary every N ms; 0 disables (tests drive refresh). */
  pollMs?: number;
}

export class App {
  readonly api: ApiClient;
  readonly state: ViewState = initialState();
  readonly root: HTMLElement;

  private topBar = el("header", { class: "top-bar" });
  private tabBar = el("nav", { class: "tabs", "data-testid": "tab-bar" });
  private content = el("main", { class: "content", "data-testid": "content" });
  private errorBox = el("p", { class: "error", "data-testid": "error-box" });
  private waitBadge = el("span", {
    class: "wait-badge hidden",
    "data-testid": "wait-badge",
  }, ["waiting for backend… (timer paused)"]);
  private timerBadge = el("span", { class: "timer", "data-testid": "timer" });
  private pollHandle: ReturnType<typeof setInterval> | null = null;

  constructor(container: HTMLElement, options: AppOptions = {}) {
    this.api = new ApiClient(options.baseUrl ?? "");
    this.root = container;
    container.append(this.topBar, this.errorBox, this.tabBar, this.content);
    if (options.pollMs) {
      this.pollHandle = setInterval(() => void this.refreshSummary(), options.pollMs);
    }
    this.renderSetup();
  }

  dispose(): void {
    if (this.pollHandle) clearInterval(this.pollHandle);
  }

  showError = (message: string): void => {
    this.errorBox.textContent = message;
  };

  clearError(): void {
    this.errorBox.textContent = "";
  }

  setWaiting = (waiting: boolean): void => {
    this.waitBadge.classList.toggle("hidden", !waiting);
  };

  async refreshSummary(): Promise<SessionSummary | null> {
    if (!this.state.sessionId) return null;
    const summary = await this.api.getSession(this.state.sessionId);
    this.state.summary = summary;
    this.renderTopBar();
    this.renderTabs();
    return summary;
  }

  // -- top bar -----------------------------------------------------------

  private renderTopBar(): void {
    clear(this.topBar);
    const summary = this.state.summary;
    if (!summary) {
      this.topBar.append(el("h1", {}, ["Personal classifier workbench"]));
      return;
    }
    const active = this.currentStrategy();
    const strategyStatus = active ? summary.strategies[active] : null;
    if (strategyStatus) {
      this.timerBadge.textContent = formatTimer(
        strategyStatus.active_seconds,
        summary.time_limit_seconds,
      );
    } else {
      this.timerBadge.textContent = "";
    }
    this.topBar.append(
      el("h1", {}, [`Session ${summary.session_id}`]),
      el("span", { class: "muted" }, [
        `order: ${summary.strategy_order.join(" → ")}`,
      ]),
      this.timerBadge,
      this.waitBadge,
    );
  }

  private currentStrategy(): StrategyName | null {
    const view = this.state.view;
    return view === "label" || view === "rule" || view === "prompt"
      ? view
      : view === "results"
        ? this.state.resultsStrategy
        : null;
  }

  // -- tabs --------------------------------------------------------------

  private renderTabs(): void {
    clear(this.tabBar);
    if (!this.state.summary) return;
    const summary = this.state.summary;

    this.tabBar.append(
      button("Ground truth", () => void this.showGroundTruth(), {
        class: this.state.view === "ground_truth" ? "tab active" : "tab",
        "data-testid": "tab-ground-truth",
      }),
    );
    for (const strategy of strategyTabs(summary)) {
      const phase = summary.strategies[strategy].phase;
      const tab = button(
        `${strategy} (${phase.replace("_", " ")})`,
        () => void this.showStrategy(strategy),
        { class: this.state.view === strategy ? "tab active" : "tab",
          "data-testid": `tab-${strategy}` },
      );
      this.tabBar.append(tab);
    }
    this.tabBar.append(
      button("Results", () => void this.showResults(this.state.resultsStrategy), {
        class: this.state.view === "results" ? "tab active" : "tab",
        "data-testid": "tab-results",
      }),
    );
  }

  // -- views --------------------------------------------------------------

  private renderSetup(): void {
    this.state.view = "setup";
    clear(this.content);
    this.renderTopBar();
    const sessionInput = el("input", {
      type: "text",
      placeholder: "session id",
      "data-testid": "setup-session-id",
    });
    const corpusSelect = el("select", { "data-testid": "setup-corpus" });
    void this.api
      .listCorpora()
      .then(({ corpora }) => {
        for (const cid of corpora) corpusSelect.append(el("option", { value: cid }, [cid]));
      })
      .catch((err) => this.showError(String(err)));
    const testSizeInput = el("input", {
      type: "number",
      value: "50",
      "data-testid": "setup-test-size",
    });
    const create = button("Create session", () => {
      void (async () => {
        try {
          this.clearError();
          const summary = await this.api.createSession({
            session_id: sessionInput.value.trim(),
            corpus_id: corpusSelect.value,
            test_size: Number(testSizeInput.value) || 50,
          });
          this.state.sessionId = summary.session_id;
          this.state.summary = summary;
          this.renderTabs();
          await this.showGroundTruth();
        } catch (err) {
          this.showError(err instanceof Error ? err.message : String(err));
        }
      })();
    }, { "data-testid": "setup-create" });

    const resume = button("Resume session", () => {
      void (async () => {
        try {
          this.clearError();
          this.state.sessionId = sessionInput.value.trim();
          const summary = await this.refreshSummary();
          if (summary) await this.showGroundTruth();
        } catch (err) {
          this.state.sessionId = null;
          this.showError(err instanceof Error ? err.message : String(err));
        }
      })();
    }, { "data-testid": "setup-resume" });

    this.content.append(
      el("section", { class: "setup" }, [
        el("h2", {}, ["Start"]),
        el("label", {}, ["Session id ", sessionInput]),
        el("label", {}, ["Corpus ", corpusSelect]),
        el("label", {}, ["Test size ", testSizeInput]),
        create,
        resume,
      ]),
    );
  }

  async showGroundTruth(): Promise<void> {
    if (!this.state.sessionId) return;
    this.state.view = "ground_truth";
    this.clearError();
    clear(this.content);
    const view = createGroundTruthView(this.api, this.state.sessionId, {
      onError: this.showError,
      onFinalized: () => void this.refreshSummary(),
    });
    this.content.append(view.root);
    await view.refresh();
    this.renderTabs();
    this.renderTopBar();
  }

  private phaseControls(strategy: StrategyName): HTMLElement {
    const summary = this.state.summary!;
    const phase = summary.strategies[strategy].phase;
    const bar = el("div", { class: "phase-bar", "data-testid": "phase-bar" }, [
      el("span", { class: "muted" }, [`phase: ${phase.replace("_", " ")}`]),
    ]);
    const transition = (
      label: string,
      action: () => Promise<unknown>,
      testid: string,
    ) =>
      button(label, () => {
        void (async () => {
          try {
            this.clearError();
            await action();
            await this.refreshSummary();
            if (label === "Finish (review)") {
              await this.showResults(strategy);
            } else {
              await this.showStrategy(strategy);
            }
          } catch (err) {
            this.showError(err instanceof Error ? err.message : String(err));
          }
        })();
      }, { "data-testid": testid });

    if (phase === "not_started") {
      bar.append(
        transition("Open", () => this.api.openStrategy(this.state.sessionId!, strategy), "phase-open"),
      );
    } else if (phase === "authoring") {
      bar.append(
        transition("Finish (review)", () => this.api.finishStrategy(this.state.sessionId!, strategy), "phase-finish"),
      );
    } else if (phase === "review") {
      bar.append(
        transition("Close", () => this.api.closeStrategy(this.state.sessionId!, strategy), "phase-close"),
      );
    }
    return bar;
  }

  async showStrategy(strategy: StrategyName): Promise<void> {
    if (!this.state.sessionId) return;
    this.state.view = strategy;
    this.clearError();
    await this.refreshSummary();
    clear(this.content);
    this.content.append(this.phaseControls(strategy));

    const phase = this.state.summary!.strategies[strategy].phase;
    if (phase === "not_started") {
      this.content.append(
        el("p", { class: "muted" }, ["Open this strategy to start authoring."]),
      );
      this.renderTabs();
      return;
    }
    if (phase === "review" || phase === "closed") {
      await this.showResults(strategy);
      return;
    }

    const sid = this.state.sessionId;
    if (strategy === "label") {
      const view = createLabelView(this.api, sid, {
        onError: this.showError,
        onWait: this.setWaiting,
      });
      this.content.append(view.root);
      await view.refresh();
    } else if (strategy === "rule") {
      const view = createRulesView(this.api, sid, { onError: this.showError });
      this.content.append(view.root);
      await view.refresh();
    } else {
      const view = createPromptsView(this.api, sid, { onError: this.showError });
      this.content.append(view.root);
      await view.refresh();
    }
    this.renderTabs();
    this.renderTopBar();
  }

  async showResults(strategy: StrategyName): Promise<void> {
    if (!this.state.sessionId) return;
    this.state.view = "results";
    this.state.resultsStrategy = strategy;
    this.clearError();
    await this.refreshSummary();
    clear(this.content);
    this.content.append(this.phaseControls(strategy));
    const view = createResultsView(this.api, this.state.sessionId, {
      onError: this.showError,
    });
    this.content.append(view.root);
    await view.refresh(strategy);
    this.renderTabs();
    this.renderTopBar();
  }
}

export function mountApp(container: HTMLElement, options: AppOptions = {}): App {
  return new App(container, options);
}

declare global {
  interface Window {
    __MODKIT_BASE__?: string;
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  mountApp(document.getElementById("app")!, {
    baseUrl: window.__MODKIT_BASE__ ?? "",
    pollMs: 5000,
  });
}
