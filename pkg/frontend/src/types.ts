// Payload shapes of the classifier-authoring service API.

export type LabelValue = "Keep" | "Remove";
export type StrategyName = "label" | "rule" | "prompt";
export type PhaseName = "not_started" | "authoring" | "review" | "closed";
export type FilterName = "all" | "removed" | "approved";

export interface StrategyStatus {
  phase: PhaseName;
  active_seconds: number;
  over_time_limit: boolean;
}

export interface SessionSummary {
  session_id: string;
  corpus_id: string;
  seed: number;
  strategy_order: StrategyName[];
  strategies: Record<StrategyName, StrategyStatus>;
  ground_truth: { labeled: number; frozen: boolean; test_size: number };
  counts: { labels: number; rules: number; prompts: number };
  time_limit_seconds: number;
}

export interface CommentRow {
  id: string;
  text: string;
}

export interface TriggeredPhrase {
  condition: number;
  phrase: string;
  start: number;
  end: number;
}

export interface Explanation {
  p_remove?: number;
  rule?: string;
  triggered?: TriggeredPhrase[];
  prompts?: string[];
  degraded?: boolean;
}

export interface PredictionRow {
  comment_id: string;
  text: string;
  decision: LabelValue;
  explanation: Explanation;
}

export interface ApplyResult {
  target: string;
  filter: FilterName;
  results: PredictionRow[];
}

export interface JobEnvelope {
  job_id: string | null;
  status: "pending" | "done" | "failed";
  result?: ApplyResult;
  error?: string;
}

export interface VariantFlags {
  repeated_letters: boolean;
  case_insensitive: boolean;
  char_substitution: boolean;
  noun_forms: boolean;
  verb_forms: boolean;
}

export interface ConditionBody {
  phrases: string[];
  flags: Partial<VariantFlags>;
}

export interface RuleRecord {
  rule_id: string;
  name: string;
  includes: { kind: string; phrases: string[]; flags: VariantFlags }[];
  exclude?: { kind: string; phrases: string[]; flags: VariantFlags } | null;
}

export interface PromptRecord {
  prompt_id: string;
  id: string;
  description: string;
  positive_examples: string[];
  negative_examples: string[];
  version: string;
}

export interface MetricsPayload {
  strategy: StrategyName;
  counts: { tp: number; fp: number; fn: number; tn: number };
  metrics: {
    accuracy: number;
    precision: number;
    recall: number;
    f1: number;
    flags: string[];
  };
}

export interface LabelStatePayload {
  labeled: Record<string, LabelValue>;
  current_batch: CommentRow[];
  model_trained: boolean;
}

export interface EventRow {
  ts: number;
  session_id: string;
  kind: string;
  strategy: StrategyName | null;
  payload: Record<string, unknown>;
}

export interface ApiErrorBody {
  code: string;
  message: string;
  details: Record<string, unknown>;
}
