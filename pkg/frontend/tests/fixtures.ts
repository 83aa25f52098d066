import type { FetchLike } from "../src/api";
import type {
  ConceptOut,
  InferenceResponse,
  ModelDescription,
  WhatIfItem,
} from "../src/types";

function input(id: string, label: string, values: string[], group: string | null): ConceptOut {
  const encodings: Record<string, number> = {};
  values.forEach((v, i) => (encodings[v] = values.length > 1 ? i / (values.length - 1) : 0));
  return { id, label, kind: "input", group, values, encodings };
}

/** A model shaped like the bundled CAD map: 31 inputs across 4 state groups. */
export function cadLikeModel(): ModelDescription {
  const concepts: ConceptOut[] = [];
  const groupOf = (i: number): string | null => {
    if (i <= 5) return null;
    if (i <= 11) return "A34";
    if (i <= 21) return i === 14 || i === 20 || i === 21 ? "A33" : "A32";
    return "A35";
  };
  for (let i = 1; i <= 31; i++) {
    const values = i === 15 ? ["no", "occasionally", "yes"] : ["no", "yes"];
    concepts.push(input(`A${i}`, `attribute ${i}`, values, groupOf(i)));
  }
  for (const [id, label] of [
    ["A32", "predisposing factors"],
    ["A33", "recurrent diseases"],
    ["A34", "demographics"],
    ["A35", "diagnostic tests"],
  ]) {
    concepts.push({ id, label, kind: "state", group: null, values: null, encodings: null });
  }
  concepts.push({ id: "Out", label: "disease probability", kind: "output", group: null, values: null, encodings: null });
  return {
    meta: { name: "cad-afcm", version: "1.0" },
    concepts,
    edges: [],
    rules: [{ id: "R1", description: "scintigraphy boost" }],
    labels: [{ upto: 1.0, label: "Definitely Abnormal" }],
  };
}

/** A structurally different second model, for the schema-swap test. */
export function gardenModel(): ModelDescription {
  return {
    meta: { name: "garden-health", version: "0.1" },
    concepts: [
      input("W1", "watering", ["never", "weekly", "daily"], "G1"),
      input("W2", "sunlight", ["shade", "partial", "full"], "G1"),
      input("P1", "aphids", ["no", "yes"], "G2"),
      input("P2", "mildew", ["no", "some", "severe"], "G2"),
      input("S0", "soil quality", ["poor", "good"], null),
      { id: "G1", label: "care", kind: "state", group: null, values: null, encodings: null },
      { id: "G2", label: "pests", kind: "state", group: null, values: null, encodings: null },
      { id: "Out", label: "health", kind: "output", group: null, values: null, encodings: null },
    ],
    edges: [],
    rules: [],
    labels: [{ upto: 1.0, label: "fine" }],
  };
}

export const CASES = {
  cases: [
    { id: "Case4", engine: "afcm", rules_enabled: false, states: ["A32", "A33"], output_mode: "single" },
    { id: "Case9", engine: "afcm", rules_enabled: true, states: ["A32", "A33", "A34"], output_mode: "single" },
  ],
};

export function inferenceResponse(overrides: Partial<InferenceResponse> = {}): InferenceResponse {
  return {
    decision: { class: "Diseased", score: 0.6091, label: "Abnormal", raw_outputs: { Out: 0.2182 } },
    fired_rules: [
      { rule_id: "R1", description: "scintigraphy boost", edges_scaled: ["A31->Out"], edges_removed: [], concepts_deactivated: [] },
    ],
    contributions: Array.from({ length: 12 }, (_, i) => ({
      source: `A${i + 1}`,
      label: `attribute ${i + 1}`,
      kind: "input",
      weight: 0.5,
      value: 1.0,
      contribution: (12 - i) / 24,
    })),
    iterations: 13,
    converged: true,
    case_id: "Case9",
    ...overrides,
  };
}

export function whatIfItem(delta: Record<string, string>, score: number | null, error?: string): WhatIfItem {
  if (score === null) {
    return { delta, response: null, error: error ?? "failed" };
  }
  return {
    delta,
    response: inferenceResponse({ decision: { class: score >= 0.5 ? "Diseased" : "Healthy", score, label: "x", raw_outputs: {} } }),
    error: null,
  };
}

export function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

export type Route = (body: unknown) => Response | Promise<Response>;

/** Routes POST/GET by path; records the bodies it saw. */
export function mockFetch(routes: Record<string, Route>): FetchLike & { calls: { path: string; body: unknown }[] } {
  const calls: { path: string; body: unknown }[] = [];
  const impl = async (input: string, init?: RequestInit): Promise<Response> => {
    const body = init?.body ? JSON.parse(String(init.body)) : undefined;
    calls.push({ path: input, body });
    const route = routes[input];
    if (!route) return new Response("not found", { status: 404 });
    return route(body);
  };
  return Object.assign(impl, { calls });
}
