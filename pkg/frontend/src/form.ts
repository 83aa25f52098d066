import type { ConceptOut, ModelDescription } from "./types.js";

/**
 * Schema-driven attribute form.
 *
 * Everything rendered here comes from the fetched model description: one
 * select per input concept with exactly its declared values, grouped into
 * sections by the state concept each input feeds. Swapping the model file
 * changes the form with zero code changes.
 */
export class AttributeForm {
  private readonly container: HTMLElement;
  private readonly controls = new Map<string, HTMLSelectElement>();
  private readonly errors = new Map<string, HTMLElement>();
  private readonly dirty = new Set<string>();
  onChange: (() => void) | null = null;

  constructor(container: HTMLElement) {
    this.container = container;
  }

  render(model: ModelDescription): void {
    this.container.textContent = "";
    this.controls.clear();
    this.errors.clear();
    this.dirty.clear();

    const inputs = model.concepts.filter((c) => c.kind === "input");
    const stateLabels = new Map<string, string>();
    for (const concept of model.concepts) {
      if (concept.kind === "state") stateLabels.set(concept.id, concept.label || concept.id);
    }

    const sections = new Map<string, ConceptOut[]>();
    for (const concept of inputs) {
      const key = concept.group ?? "";
      if (!sections.has(key)) sections.set(key, []);
      sections.get(key)!.push(concept);
    }

    for (const [group, members] of sections) {
      const section = document.createElement("fieldset");
      section.className = "form-section";
      section.dataset.group = group;
      const legend = document.createElement("legend");
      legend.textContent = group ? stateLabels.get(group) ?? group : "Other factors";
      section.appendChild(legend);

      for (const concept of members) {
        section.appendChild(this.buildControl(concept));
      }
      this.container.appendChild(section);
    }
  }

  private buildControl(concept: ConceptOut): HTMLElement {
    const row = document.createElement("div");
    row.className = "form-row";
    row.dataset.attribute = concept.id;

    const label = document.createElement("label");
    label.htmlFor = `attr-${concept.id}`;
    label.textContent = `${concept.id} — ${concept.label || concept.id}`;
    row.appendChild(label);

    const select = document.createElement("select");
    select.id = `attr-${concept.id}`;
    select.dataset.attribute = concept.id;
    for (const value of concept.values ?? []) {
      const option = document.createElement("option");
      option.value = value;
      option.textContent = value;
      select.appendChild(option);
    }
    select.addEventListener("change", () => {
      this.dirty.add(concept.id);
      this.clearFieldError(concept.id);
      this.onChange?.();
    });
    row.appendChild(select);

    const error = document.createElement("span");
    error.className = "field-error";
    error.hidden = true;
    row.appendChild(error);

    this.controls.set(concept.id, select);
    this.errors.set(concept.id, error);
    return row;
  }

  attributeIds(): string[] {
    return [...this.controls.keys()];
  }

  values(): Record<string, string> {
    const out: Record<string, string> = {};
    for (const [attr, select] of this.controls) out[attr] = select.value;
    return out;
  }

  setValues(values: Record<string, string>): void {
    for (const [attr, value] of Object.entries(values)) {
      const select = this.controls.get(attr);
      if (select && select.value !== value) {
        select.value = value;
        this.dirty.add(attr);
      }
    }
  }

  isDirty(attr: string): boolean {
    return this.dirty.has(attr);
  }

  domainOf(attr: string): string[] {
    const select = this.controls.get(attr);
    return select ? [...select.options].map((o) => o.value) : [];
  }

  showFieldError(attr: string, message: string): boolean {
    const span = this.errors.get(attr);
    if (!span) return false;
    span.textContent = message;
    span.hidden = false;
    return true;
  }

  clearFieldError(attr: string): void {
    const span = this.errors.get(attr);
    if (span) {
      span.textContent = "";
      span.hidden = true;
    }
  }

  clearAllErrors(): void {
    for (const attr of this.errors.keys()) this.clearFieldError(attr);
  }
}
