/** Wire types of the decision service API, as consumed by this UI. */

export interface ConceptOut {
  id: string;
  label: string;
  kind: "input" | "state" | "output";
  group: string | null;
  values: string[] | null;
  encodings: Record<string, number> | null;
}

export interface ModelDescription {
  meta: { name: string; version: string; notes?: string[] };
  concepts: ConceptOut[];
  edges: unknown[];
  rules: { id: string; description: string }[];
  labels: { upto: number; label: string }[];
}

export interface CaseOut {
  id: string;
  engine: string;
  rules_enabled: boolean;
  states: string[];
  output_mode: string;
}

export interface DecisionOut {
  class: string;
  score: number;
  label: string;
  raw_outputs: Record<string, number>;
}

export interface FiredRuleOut {
  rule_id: string;
  description: string;
  edges_scaled: string[];
  edges_removed: string[];
  concepts_deactivated: string[];
}

export interface ContributionOut {
  source: string;
  label: string;
  kind: string;
  weight: number;
  value: number;
  contribution: number;
}

export interface InferenceResponse {
  decision: DecisionOut;
  fired_rules: FiredRuleOut[];
  contributions: ContributionOut[];
  iterations: number;
  converged: boolean;
  case_id: string;
}

export interface WhatIfItem {
  delta: Record<string, string>;
  response: InferenceResponse | null;
  error: string | null;
}

export interface WhatIfResponse {
  base: InferenceResponse;
  results: WhatIfItem[];
}

export interface FieldError {
  field: string;
  message: string;
}

/** A pending what-if scenario: one or more attribute changes. */
export type Delta = Record<string, string>;
