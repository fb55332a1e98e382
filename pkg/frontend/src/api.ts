// Typed client for the authoring service. One method per endpoint; every
// user gesture in the views calls exactly one of these, so the server log
// mirrors the gesture stream one-to-one.

import type {
  ApiErrorBody,
  ApplyResult,
  CommentRow,
  ConditionBody,
  EventRow,
  FilterName,
  JobEnvelope,
  LabelStatePayload,
  LabelValue,
  MetricsPayload,
  PromptRecord,
  RuleRecord,
  SessionSummary,
  StrategyName,
} from "./types";

export class ApiError extends Error {
  constructor(
    public status: number,
    public body: ApiErrorBody,
  ) {
    super(body.message);
  }
}

type FetchLike = typeof fetch;

export class ApiClient {
  constructor(
    private base: string,
    private fetchImpl: FetchLike = fetch,
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchImpl(`${this.base}${path}`, {
      method,
      headers: body === undefined ? {} : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await response.json();
    if (!response.ok) {
      const error: ApiErrorBody = payload?.error ?? {
        code: "http_error",
        message: `HTTP ${response.status}`,
        details: {},
      };
      throw new ApiError(response.status, error);
    }
    return payload as T;
  }

  // sessions -----------------------------------------------------------

  listCorpora(): Promise<{ corpora: string[] }> {
    return this.request("GET", "/corpora");
  }

  createSession(body: {
    session_id: string;
    corpus_id: string;
    seed?: number;
    strategy_order?: StrategyName[];
    test_size?: number;
    batch_k?: number;
  }): Promise<SessionSummary> {
    return this.request("POST", "/sessions", body);
  }

  getSession(sid: string): Promise<SessionSummary> {
    return this.request("GET", `/sessions/${sid}`);
  }

  comments(
    sid: string,
    params: { split?: "train" | "test"; offset?: number; limit?: number },
  ): Promise<{ comments: CommentRow[]; total: number }> {
    const query = new URLSearchParams();
    if (params.split) query.set("split", params.split);
    if (params.offset !== undefined) query.set("offset", String(params.offset));
    if (params.limit !== undefined) query.set("limit", String(params.limit));
    return this.request("GET", `/sessions/${sid}/comments?${query}`);
  }

  commentsByIds(sid: string, ids: string[]): Promise<{ comments: CommentRow[] }> {
    const query = new URLSearchParams({ ids: ids.join(",") });
    return this.request("GET", `/sessions/${sid}/comments?${query}`);
  }

  events(sid: string, userOnly = false): Promise<{ events: EventRow[] }> {
    return this.request(
      "GET",
      `/sessions/${sid}/events?user_only=${userOnly}`,
    );
  }

  // ground truth --------------------------------------------------------

  submitGroundTruth(sid: string, labels: Record<string, LabelValue>) {
    return this.request<{ labeled: number; remaining: number }>(
      "POST",
      `/sessions/${sid}/ground-truth`,
      { labels },
    );
  }

  finalizeGroundTruth(sid: string) {
    return this.request<{ frozen: boolean }>(
      "POST",
      `/sessions/${sid}/ground-truth/finalize`,
    );
  }

  groundTruth(sid: string) {
    return this.request<{ labels: Record<string, LabelValue>; frozen: boolean }>(
      "GET",
      `/sessions/${sid}/ground-truth`,
    );
  }

  // strategy lifecycle ----------------------------------------------------

  openStrategy(sid: string, strategy: StrategyName): Promise<SessionSummary> {
    return this.request("POST", `/sessions/${sid}/strategies/${strategy}/open`, {});
  }

  finishStrategy(sid: string, strategy: StrategyName): Promise<SessionSummary> {
    return this.request("POST", `/sessions/${sid}/strategies/${strategy}/finish`, {});
  }

  closeStrategy(sid: string, strategy: StrategyName) {
    return this.request<{ strategy: StrategyName; snapshots: number }>(
      "POST",
      `/sessions/${sid}/strategies/${strategy}/close`,
      {},
    );
  }

  apply(
    sid: string,
    strategy: StrategyName,
    body: {
      target: "train_page" | "test";
      filter?: FilterName;
      offset?: number;
      limit?: number;
      gesture?: string;
    },
  ): Promise<JobEnvelope> {
    return this.request("POST", `/sessions/${sid}/strategies/${strategy}/apply`, body);
  }

  getJob(sid: string, jobId: string): Promise<JobEnvelope> {
    return this.request("GET", `/sessions/${sid}/jobs/${jobId}`);
  }

  async pollJob(
    sid: string,
    envelope: JobEnvelope,
    delayMs = 150,
    maxTries = 400,
  ): Promise<JobEnvelope> {
    let current = envelope;
    for (let i = 0; i < maxTries && current.status === "pending"; i++) {
      if (current.job_id === null) break;
      await new Promise((resolve) => setTimeout(resolve, delayMs));
      current = await this.getJob(sid, current.job_id);
    }
    if (current.status === "failed") {
      throw new ApiError(502, {
        code: "job_failed",
        message: current.error ?? "evaluation failed",
        details: {},
      });
    }
    if (current.status !== "done") {
      throw new ApiError(504, {
        code: "job_timeout",
        message: "evaluation did not finish in time",
        details: {},
      });
    }
    return current;
  }

  metrics(sid: string, strategy: StrategyName): Promise<MetricsPayload> {
    return this.request("GET", `/sessions/${sid}/strategies/${strategy}/metrics`);
  }

  report(sid: string): Promise<Record<string, unknown>> {
    return this.request("GET", `/sessions/${sid}/report`);
  }

  // label strategy ---------------------------------------------------------

  labelMark(sid: string, commentId: string, label: LabelValue) {
    return this.request<{ labeled: number }>(
      "POST",
      `/sessions/${sid}/label/mark`,
      { comment_id: commentId, label },
    );
  }

  labelLoadMore(sid: string, k?: number) {
    return this.request<{ batch: CommentRow[]; model_trained: boolean; labeled: number }>(
      "POST",
      `/sessions/${sid}/label/load-more`,
      k === undefined ? {} : { k },
    );
  }

  labelState(sid: string): Promise<LabelStatePayload> {
    return this.request("GET", `/sessions/${sid}/label/state`);
  }

  // rule strategy -------------------------------------------------------------

  listRules(sid: string): Promise<{ rules: RuleRecord[] }> {
    return this.request("GET", `/sessions/${sid}/rules`);
  }

  createRule(
    sid: string,
    body: { name: string; includes: ConditionBody[]; exclude?: ConditionBody | null },
  ): Promise<RuleRecord> {
    return this.request("POST", `/sessions/${sid}/rules`, body);
  }

  editRule(
    sid: string,
    ruleId: string,
    body: { name: string; includes: ConditionBody[]; exclude?: ConditionBody | null },
  ): Promise<RuleRecord> {
    return this.request("PUT", `/sessions/${sid}/rules/${ruleId}`, body);
  }

  deleteRule(sid: string, ruleId: string) {
    return this.request<{ deleted: string }>(
      "DELETE",
      `/sessions/${sid}/rules/${ruleId}`,
    );
  }

  toggleVariants(
    sid: string,
    ruleId: string,
    enabled: boolean,
    refresh?: { target: "train_page"; filter: FilterName; limit: number },
  ): Promise<RuleRecord & { predictions?: ApplyResult }> {
    return this.request(
      "POST",
      `/sessions/${sid}/rules/${ruleId}/toggle-variants`,
      { enabled, refresh },
    );
  }

  suggestPhrases(sid: string, phrases: string[]) {
    return this.request<{ suggestions: string[] }>(
      "POST",
      `/sessions/${sid}/rules/suggest-phrases`,
      { phrases },
    );
  }

  // prompt strategy -------------------------------------------------------------

  listPrompts(sid: string): Promise<{ prompts: PromptRecord[] }> {
    return this.request("GET", `/sessions/${sid}/prompts`);
  }

  createPrompt(
    sid: string,
    body: { description: string; positive_examples: string[]; negative_examples: string[] },
  ): Promise<PromptRecord> {
    return this.request("POST", `/sessions/${sid}/prompts`, body);
  }

  editPrompt(
    sid: string,
    promptId: string,
    body: { description: string; positive_examples: string[]; negative_examples: string[] },
  ): Promise<PromptRecord> {
    return this.request("PUT", `/sessions/${sid}/prompts/${promptId}`, body);
  }

  deletePrompt(sid: string, promptId: string) {
    return this.request<{ deleted: string }>(
      "DELETE",
      `/sessions/${sid}/prompts/${promptId}`,
    );
  }

  addFewshot(sid: string, promptId: string, text: string, positive: boolean) {
    return this.request<PromptRecord>(
      "POST",
      `/sessions/${sid}/prompts/${promptId}/examples`,
      { text, positive },
    );
  }

  improvePrompt(sid: string, promptId: string) {
    return this.request<{ prompt_id: string; suggestion: string }>(
      "POST",
      `/sessions/${sid}/prompts/${promptId}/improve`,
      {},
    );
  }

  // view gestures ---------------------------------------------------------------

  gesture(sid: string, kind: string, strategy: StrategyName | null, payload: Record<string, unknown>) {
    return this.request<{ recorded: string }>(
      "POST",
      `/sessions/${sid}/gestures`,
      { kind, strategy, payload },
    );
  }
}
