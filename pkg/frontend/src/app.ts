import { ApiClient, ApiValidationError } from "./api.js";
import { AttributeForm } from "./form.js";
import { ResultPanel } from "./results.js";
import { WhatIfPanel } from "./whatif.js";
import type { InferenceResponse, WhatIfItem } from "./types.js";

/**
 * Single-view what-if console.
 *
 * One inference request is in flight at a time; every submission gets a
 * sequence number and responses that arrive after a newer submission are
 * discarded, so the panel always reflects the latest request.
 */
export class App {
  private readonly root: HTMLElement;
  private readonly api: ApiClient;
  private form!: AttributeForm;
  private results!: ResultPanel;
  private whatif!: WhatIfPanel;
  private caseSelect!: HTMLSelectElement;
  private submitButton!: HTMLButtonElement;
  private statusLine!: HTMLElement;
  private sequence = 0;
  private inFlight = false;
  private base: InferenceResponse | null = null;

  constructor(root: HTMLElement, api: ApiClient) {
    this.root = root;
    this.api = api;
  }

  async start(): Promise<void> {
    this.root.textContent = "";
    let model;
    let cases;
    try {
      [model, cases] = await Promise.all([this.api.model(), this.api.cases()]);
    } catch {
      this.renderConnectionBanner();
      return;
    }

    const header = document.createElement("header");
    const title = document.createElement("h1");
    title.textContent = `${model.meta.name || "decision model"} — what-if console`;
    header.appendChild(title);

    this.caseSelect = document.createElement("select");
    this.caseSelect.id = "case-select";
    for (const caseConfig of cases) {
      const option = document.createElement("option");
      option.value = caseConfig.id;
      option.textContent = caseConfig.id;
      this.caseSelect.appendChild(option);
    }
    if (cases.some((c) => c.id === "Case9")) this.caseSelect.value = "Case9";
    header.appendChild(this.caseSelect);
    this.root.appendChild(header);

    const layout = document.createElement("div");
    layout.className = "layout";

    const formSide = document.createElement("section");
    formSide.className = "form-side";
    const formContainer = document.createElement("form");
    formContainer.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.submit();
    });
    this.form = new AttributeForm(formContainer);
    this.form.render(model);
    formSide.appendChild(formContainer);

    this.submitButton = document.createElement("button");
    this.submitButton.type = "button";
    this.submitButton.id = "submit";
    this.submitButton.textContent = "classify";
    this.submitButton.addEventListener("click", () => void this.submit());
    formSide.appendChild(this.submitButton);

    this.statusLine = document.createElement("div");
    this.statusLine.className = "status";
    formSide.appendChild(this.statusLine);
    layout.appendChild(formSide);

    const resultSide = document.createElement("section");
    resultSide.className = "result-side";
    const resultContainer = document.createElement("div");
    resultContainer.id = "result";
    this.results = new ResultPanel(resultContainer);
    resultSide.appendChild(resultContainer);

    const whatifContainer = document.createElement("div");
    whatifContainer.id = "whatif";
    this.whatif = new WhatIfPanel(whatifContainer, {
      onRun: (deltas) => void this.runWhatIf(deltas),
      onPromote: (item) => this.promote(item),
    });
    const domains = new Map<string, string[]>();
    for (const attr of this.form.attributeIds()) domains.set(attr, this.form.domainOf(attr));
    this.whatif.setDomains(domains);
    resultSide.appendChild(whatifContainer);
    layout.appendChild(resultSide);

    this.root.appendChild(layout);
  }

  private renderConnectionBanner(): void {
    this.root.textContent = "";
    const banner = document.createElement("div");
    banner.className = "banner banner-error";
    const message = document.createElement("span");
    message.textContent = "cannot reach the decision service";
    banner.appendChild(message);
    const retry = document.createElement("button");
    retry.type = "button";
    retry.textContent = "retry";
    retry.addEventListener("click", () => void this.start());
    banner.appendChild(retry);
    this.root.appendChild(banner);
  }

  private setPending(pending: boolean): void {
    this.inFlight = pending;
    this.submitButton.disabled = pending;
    this.statusLine.textContent = pending ? "running…" : "";
  }

  async submit(): Promise<void> {
    if (this.inFlight) return; // no duplicate submissions
    const seq = ++this.sequence;
    this.form.clearAllErrors();
    this.setPending(true);
    try {
      const response = await this.api.infer(this.form.values(), this.caseSelect.value);
      if (seq !== this.sequence) return; // superseded
      this.base = response;
      this.results.render(response);
      this.whatif.setBaseScore(response.decision.score);
    } catch (error) {
      if (seq !== this.sequence) return;
      this.showError(error);
    } finally {
      if (seq === this.sequence) this.setPending(false);
    }
  }

  async runWhatIf(deltas: Record<string, string>[]): Promise<void> {
    if (this.inFlight || !this.base || deltas.length === 0) return;
    const seq = ++this.sequence;
    this.setPending(true);
    try {
      const body = await this.api.whatif(this.form.values(), this.caseSelect.value, deltas);
      if (seq !== this.sequence) return;
      this.base = body.base;
      this.whatif.setBaseScore(body.base.decision.score);
      this.results.render(body.base);
      this.whatif.renderResults(body.results);
    } catch (error) {
      if (seq !== this.sequence) return;
      this.showError(error);
    } finally {
      if (seq === this.sequence) this.setPending(false);
    }
  }

  private promote(item: WhatIfItem): void {
    if (!item.response) return;
    this.form.setValues(item.delta);
    this.base = item.response;
    this.results.render(item.response);
    this.whatif.setBaseScore(item.response.decision.score);
    this.whatif.clearPending();
    this.whatif.renderResults([]);
  }

  private showError(error: unknown): void {
    if (error instanceof ApiValidationError) {
      let unplaced = false;
      for (const detail of error.details) {
        if (!detail.field || !this.form.showFieldError(detail.field, detail.message)) unplaced = true;
      }
      if (unplaced) this.statusLine.textContent = error.message;
      return;
    }
    this.statusLine.textContent = error instanceof Error ? error.message : "request failed";
  }

  /** Test hook: current base response as last rendered. */
  baseResponse(): InferenceResponse | null {
    return this.base;
  }
}
