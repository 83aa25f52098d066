import type { InferenceResponse } from "./types.js";

const TOP_CONTRIBUTIONS = 8;

/** Renders one inference response: decision, rules, contribution bars. */
export class ResultPanel {
  private readonly container: HTMLElement;
  private showAll = false;
  private current: InferenceResponse | null = null;

  constructor(container: HTMLElement) {
    this.container = container;
  }

  render(response: InferenceResponse): void {
    this.current = response;
    this.container.textContent = "";

    const decision = document.createElement("div");
    decision.className = `decision decision-${response.decision.class.toLowerCase()}`;

    const klass = document.createElement("div");
    klass.className = "decision-class";
    klass.textContent = response.decision.class;
    decision.appendChild(klass);

    const score = document.createElement("div");
    score.className = "decision-score";
    // echoed from the API payload; formatting only
    score.textContent = `score ${response.decision.score.toFixed(4)}`;
    score.title = String(response.decision.score);
    decision.appendChild(score);

    const label = document.createElement("div");
    label.className = "decision-label";
    label.textContent = response.decision.label;
    decision.appendChild(label);

    const badge = document.createElement("span");
    badge.className = response.converged ? "badge badge-ok" : "badge badge-warn";
    badge.textContent = response.converged
      ? `converged in ${response.iterations} iterations`
      : `did not converge (${response.iterations} iterations)`;
    decision.appendChild(badge);

    this.container.appendChild(decision);
    this.container.appendChild(this.renderRules(response));
    this.container.appendChild(this.renderContributions(response));
  }

  private renderRules(response: InferenceResponse): HTMLElement {
    const panel = document.createElement("div");
    panel.className = "rules-panel";
    const heading = document.createElement("h3");
    heading.textContent = "Fired rules";
    panel.appendChild(heading);

    if (!response.fired_rules.length) {
      const none = document.createElement("p");
      none.className = "rules-none";
      none.textContent = "none";
      panel.appendChild(none);
      return panel;
    }
    const list = document.createElement("ul");
    for (const rule of response.fired_rules) {
      const item = document.createElement("li");
      item.dataset.ruleId = rule.rule_id;
      const effects: string[] = [];
      if (rule.edges_scaled.length) effects.push(`scaled ${rule.edges_scaled.join(", ")}`);
      if (rule.edges_removed.length) effects.push(`removed ${rule.edges_removed.join(", ")}`);
      if (rule.concepts_deactivated.length) effects.push(`deactivated ${rule.concepts_deactivated.join(", ")}`);
      item.textContent = `${rule.rule_id}: ${rule.description}${effects.length ? ` (${effects.join("; ")})` : ""}`;
      list.appendChild(item);
    }
    panel.appendChild(list);
    return panel;
  }

  private renderContributions(response: InferenceResponse): HTMLElement {
    const panel = document.createElement("div");
    panel.className = "contributions-panel";
    const heading = document.createElement("h3");
    heading.textContent = "Contributions";
    panel.appendChild(heading);

    // API orders by |contribution| already; never re-derive the numbers
    const entries = this.showAll ? response.contributions : response.contributions.slice(0, TOP_CONTRIBUTIONS);
    const largest = Math.max(...response.contributions.map((c) => Math.abs(c.contribution)), 1e-12);

    const list = document.createElement("div");
    list.className = "contribution-bars";
    for (const entry of entries) {
      const row = document.createElement("div");
      row.className = "contribution-row";
      row.dataset.source = entry.source;

      const name = document.createElement("span");
      name.className = "contribution-name";
      name.textContent = `${entry.source} ${entry.label}`;
      row.appendChild(name);

      const bar = document.createElement("span");
      bar.className = entry.contribution >= 0 ? "bar bar-positive" : "bar bar-negative";
      bar.style.width = `${Math.round((Math.abs(entry.contribution) / largest) * 100)}%`;
      row.appendChild(bar);

      const value = document.createElement("span");
      value.className = "contribution-value";
      const sign = entry.contribution >= 0 ? "+" : "";
      value.textContent = `${sign}${entry.contribution.toFixed(4)}`;
      value.title = String(entry.contribution);
      row.appendChild(value);

      list.appendChild(row);
    }
    panel.appendChild(list);

    if (response.contributions.length > TOP_CONTRIBUTIONS) {
      const toggle = document.createElement("button");
      toggle.type = "button";
      toggle.className = "toggle-contributions";
      toggle.textContent = this.showAll ? "show top 8" : `show all ${response.contributions.length}`;
      toggle.addEventListener("click", () => {
        this.showAll = !this.showAll;
        if (this.current) this.render(this.current);
      });
      panel.appendChild(toggle);
    }
    return panel;
  }
}
