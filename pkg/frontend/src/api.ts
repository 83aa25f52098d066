import type { CaseOut, Delta, FieldError, InferenceResponse, ModelDescription, WhatIfResponse } from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/** A 400 from the service, carrying field-level messages. */
export class ApiValidationError extends Error {
  readonly details: FieldError[];

  constructor(details: FieldError[]) {
    super(details.map((d) => `${d.field}: ${d.message}`).join("; ") || "invalid request");
    this.details = details;
  }
}

async function parseError(response: Response): Promise<never> {
  let details: FieldError[] = [];
  try {
    const body = await response.json();
    if (Array.isArray(body.detail)) {
      details = body.detail.map((d: { field?: string; message?: string }) => ({
        field: d.field ?? "",
        message: d.message ?? "invalid",
      }));
    } else if (typeof body.detail === "string") {
      details = [{ field: "", message: body.detail }];
    }
  } catch {
    /* non-JSON error body */
  }
  if (response.status === 400 && details.length) {
    throw new ApiValidationError(details);
  }
  throw new Error(`request failed with status ${response.status}`);
}

/** Thin typed client; the fetch implementation is injected for testability. */
export class ApiClient {
  private readonly doFetch: FetchLike;

  constructor(fetchImpl?: FetchLike) {
    this.doFetch = fetchImpl ?? ((input, init) => globalThis.fetch(input, init));
  }

  private async get<T>(path: string): Promise<T> {
    const response = await this.doFetch(path);
    if (!response.ok) await parseError(response);
    return response.json() as Promise<T>;
  }

  private async post<T>(path: string, body: unknown): Promise<T> {
    const response = await this.doFetch(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!response.ok) await parseError(response);
    return response.json() as Promise<T>;
  }

  model(): Promise<ModelDescription> {
    return this.get<ModelDescription>("/api/model");
  }

  async cases(): Promise<CaseOut[]> {
    const body = await this.get<{ cases: CaseOut[] }>("/api/cases");
    return body.cases;
  }

  infer(attributes: Record<string, string>, caseId: string): Promise<InferenceResponse> {
    return this.post<InferenceResponse>("/api/infer", { attributes, case_id: caseId });
  }

  whatif(attributes: Record<string, string>, caseId: string, deltas: Delta[]): Promise<WhatIfResponse> {
    return this.post<WhatIfResponse>("/api/whatif", { attributes, case_id: caseId, deltas });
  }
}
