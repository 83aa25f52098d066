import { beforeEach, describe, expect, it } from "vitest";

import { AttributeForm } from "../src/form";
import { cadLikeModel, gardenModel } from "./fixtures";

describe("AttributeForm", () => {
  let container: HTMLElement;
  let form: AttributeForm;

  beforeEach(() => {
    document.body.innerHTML = "<form id='f'></form>";
    container = document.getElementById("f")!;
    form = new AttributeForm(container);
  });

  it("renders one control per fetched input attribute", () => {
    form.render(cadLikeModel());
    const selects = container.querySelectorAll("select");
    expect(selects.length).toBe(31);
    expect(form.attributeIds()).toHaveLength(31);
    expect(form.attributeIds()[0]).toBe("A1");
  });

  it("gives each control exactly the declared values", () => {
    form.render(cadLikeModel());
    const smoking = container.querySelector<HTMLSelectElement>("#attr-A15")!;
    expect([...smoking.options].map((o) => o.value)).toEqual(["no", "occasionally", "yes"]);
    const binary = container.querySelector<HTMLSelectElement>("#attr-A1")!;
    expect([...binary.options].map((o) => o.value)).toEqual(["no", "yes"]);
  });

  it("groups controls into sections by the state each input feeds", () => {
    form.render(cadLikeModel());
    const sections = [...container.querySelectorAll("fieldset")];
    const titles = sections.map((s) => s.querySelector("legend")!.textContent);
    expect(titles).toContain("Other factors");
    expect(titles).toContain("diagnostic tests");
    const tests = sections.find((s) => s.dataset.group === "A35")!;
    expect(tests.querySelectorAll("select").length).toBe(10);
  });

  it("collects values for every attribute", () => {
    form.render(cadLikeModel());
    const values = form.values();
    expect(Object.keys(values)).toHaveLength(31);
    expect(values.A1).toBe("no");
  });

  it("re-renders a different model with zero code changes (schema swap)", () => {
    form.render(cadLikeModel());
    form.render(gardenModel());
    const selects = container.querySelectorAll("select");
    expect(selects.length).toBe(5);
    expect(form.attributeIds()).toEqual(["W1", "W2", "P1", "P2", "S0"]);
    const watering = container.querySelector<HTMLSelectElement>("#attr-W1")!;
    expect([...watering.options].map((o) => o.value)).toEqual(["never", "weekly", "daily"]);
    const titles = [...container.querySelectorAll("legend")].map((l) => l.textContent);
    expect(titles).toEqual(["care", "pests", "Other factors"]);
  });

  it("shows and clears inline field errors", () => {
    form.render(cadLikeModel());
    expect(form.showFieldError("A20", "no value 'maybe'")).toBe(true);
    const row = container.querySelector("[data-attribute='A20'] .field-error") as HTMLElement;
    expect(row.hidden).toBe(false);
    expect(row.textContent).toContain("maybe");
    form.clearFieldError("A20");
    expect(row.hidden).toBe(true);
  });

  it("tracks dirty flags per attribute", () => {
    form.render(cadLikeModel());
    expect(form.isDirty("A1")).toBe(false);
    const select = container.querySelector<HTMLSelectElement>("#attr-A1")!;
    select.value = "yes";
    select.dispatchEvent(new Event("change"));
    expect(form.isDirty("A1")).toBe(true);
  });
});
