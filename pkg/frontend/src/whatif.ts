import type { Delta, WhatIfItem } from "./types.js";

export interface WhatIfCallbacks {
  onRun: (deltas: Delta[]) => void;
  onPromote: (item: WhatIfItem) => void;
}

/**
 * What-if scenario builder and comparison table.
 *
 * Pending deltas are single-attribute changes against the current form; the
 * run button fires one batched request, and each comparison row can be
 * promoted to become the new base.
 */
export class WhatIfPanel {
  private readonly container: HTMLElement;
  private readonly callbacks: WhatIfCallbacks;
  private pending: Delta[] = [];
  private attributePicker!: HTMLSelectElement;
  private valuePicker!: HTMLSelectElement;
  private runButton!: HTMLButtonElement;
  private pendingList!: HTMLElement;
  private resultsTable!: HTMLElement;
  private domains = new Map<string, string[]>();
  private baseScore = 0;

  constructor(container: HTMLElement, callbacks: WhatIfCallbacks) {
    this.container = container;
    this.callbacks = callbacks;
    this.build();
  }

  private build(): void {
    this.container.textContent = "";
    const heading = document.createElement("h3");
    heading.textContent = "What-if scenarios";
    this.container.appendChild(heading);

    const picker = document.createElement("div");
    picker.className = "whatif-picker";

    this.attributePicker = document.createElement("select");
    this.attributePicker.className = "whatif-attribute";
    this.attributePicker.addEventListener("change", () => this.refreshValuePicker());
    picker.appendChild(this.attributePicker);

    this.valuePicker = document.createElement("select");
    this.valuePicker.className = "whatif-value";
    picker.appendChild(this.valuePicker);

    const add = document.createElement("button");
    add.type = "button";
    add.className = "whatif-add";
    add.textContent = "add scenario";
    add.addEventListener("click", () => {
      const attr = this.attributePicker.value;
      const value = this.valuePicker.value;
      if (!attr || !value) return;
      this.pending.push({ [attr]: value });
      this.refreshPending();
    });
    picker.appendChild(add);
    this.container.appendChild(picker);

    this.pendingList = document.createElement("ul");
    this.pendingList.className = "whatif-pending";
    this.container.appendChild(this.pendingList);

    this.runButton = document.createElement("button");
    this.runButton.type = "button";
    this.runButton.className = "whatif-run";
    this.runButton.textContent = "run what-if";
    this.runButton.disabled = true;
    this.runButton.addEventListener("click", () => this.callbacks.onRun([...this.pending]));
    this.container.appendChild(this.runButton);

    this.resultsTable = document.createElement("div");
    this.resultsTable.className = "whatif-results";
    this.container.appendChild(this.resultsTable);
  }

  setDomains(domains: Map<string, string[]>): void {
    this.domains = domains;
    this.attributePicker.textContent = "";
    for (const attr of domains.keys()) {
      const option = document.createElement("option");
      option.value = attr;
      option.textContent = attr;
      this.attributePicker.appendChild(option);
    }
    this.refreshValuePicker();
  }

  setBaseScore(score: number): void {
    this.baseScore = score;
  }

  private refreshValuePicker(): void {
    this.valuePicker.textContent = "";
    for (const value of this.domains.get(this.attributePicker.value) ?? []) {
      const option = document.createElement("option");
      option.value = value;
      option.textContent = value;
      this.valuePicker.appendChild(option);
    }
  }

  private refreshPending(): void {
    this.pendingList.textContent = "";
    this.pending.forEach((delta, index) => {
      const item = document.createElement("li");
      const text = Object.entries(delta)
        .map(([attr, value]) => `${attr} → ${value}`)
        .join(", ");
      item.textContent = text;
      const remove = document.createElement("button");
      remove.type = "button";
      remove.textContent = "×";
      remove.addEventListener("click", () => {
        this.pending.splice(index, 1);
        this.refreshPending();
      });
      item.appendChild(remove);
      this.pendingList.appendChild(item);
    });
    this.runButton.disabled = this.pending.length === 0;
  }

  clearPending(): void {
    this.pending = [];
    this.refreshPending();
  }

  renderResults(items: WhatIfItem[]): void {
    this.resultsTable.textContent = "";
    for (const item of items) {
      const row = document.createElement("div");
      row.className = "whatif-row";
      const description = Object.entries(item.delta)
        .map(([attr, value]) => `${attr} → ${value}`)
        .join(", ");

      const name = document.createElement("span");
      name.className = "whatif-delta";
      name.textContent = description;
      row.appendChild(name);

      if (item.response) {
        const newScore = item.response.decision.score;
        const change = newScore - this.baseScore;

        const score = document.createElement("span");
        score.className = "whatif-score";
        score.textContent = newScore.toFixed(4);
        score.title = String(newScore);
        row.appendChild(score);

        const diff = document.createElement("span");
        diff.className = change >= 0 ? "whatif-change up" : "whatif-change down";
        diff.textContent = `${change >= 0 ? "+" : ""}${change.toFixed(4)}`;
        row.appendChild(diff);

        const promote = document.createElement("button");
        promote.type = "button";
        promote.className = "whatif-promote";
        promote.textContent = "make base";
        promote.addEventListener("click", () => this.callbacks.onPromote(item));
        row.appendChild(promote);
      } else {
        const error = document.createElement("span");
        error.className = "whatif-error";
        error.textContent = item.error ?? "failed";
        row.appendChild(error);
      }
      this.resultsTable.appendChild(row);
    }
  }
}
