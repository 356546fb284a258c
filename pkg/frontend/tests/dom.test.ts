// @vitest-environment jsdom
import { describe, expect, it } from "vitest";

import { renderVerdictCard, wireCommandForm } from "../src/main.js";
import type { VerdictPayload } from "../src/types.js";

const VERDICT: VerdictPayload = {
  severity: "reject",
  summary: "Hazard: wood into fire zone.",
  reason: "the red cube is made of wood; this action is not recommended.",
  source: "placement_hazard",
  tick: null,
  text: "Action refused. Hazard: wood into fire zone.",
  short: "Hazard: wood into fire zone.",
};

describe("verdict card", () => {
  it("renders a visible card with severity class and rationale", () => {
    const card = renderVerdictCard(document, VERDICT);
    document.body.append(card);
    expect(card.classList.contains("verdict-card")).toBe(true);
    expect(card.classList.contains("severity-reject")).toBe(true);
    expect(card.hidden).toBe(false);
    expect(card.textContent).toContain("Hazard: wood into fire zone.");
    expect(card.textContent).toContain("not recommended");
  });
});

describe("command form", () => {
  it("disables send on empty input and fires on click", () => {
    const input = document.createElement("input");
    const button = document.createElement("button");
    const sent: string[] = [];
    wireCommandForm(input, button, (text) => sent.push(text));

    expect(button.disabled).toBe(true);

    input.value = "Grasp the red cube.";
    input.dispatchEvent(new Event("input"));
    expect(button.disabled).toBe(false);

    button.dispatchEvent(new Event("click"));
    expect(sent).toEqual(["Grasp the red cube."]);
    expect(button.disabled).toBe(true); // input cleared after send
  });
});
