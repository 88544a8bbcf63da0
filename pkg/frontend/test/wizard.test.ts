import { describe, expect, it } from "vitest";

import {
  buildConfig,
  canReach,
  defaultDraft,
  firstInvalidStep,
  validateStep,
} from "../src/wizard";

import configUsed from "./fixtures/config_used.json";
import sessionCreated from "./fixtures/session_created.json";

describe("end-to-end draft serialization", () => {
  it("the default lending walkthrough reproduces the recorded config", () => {
    const draft = defaultDraft(sessionCreated.groups, "group");
    draft.gridN = 21; // the recorded sweep used 21-point grids
    expect(firstInvalidStep(draft)).toBeNull();
    expect(buildConfig(draft)).toEqual(configUsed);
  });

  it("prioritarian drafts serialize their weights", () => {
    const draft = defaultDraft(["F", "M"]);
    draft.patternVariant = "prioritarian";
    draft.weights = [2, 1];
    const config = buildConfig(draft);
    expect(config.pattern).toEqual({ prioritarian: { weights: [2, 1] } });
  });

  it("numeric predicate values are sent as numbers, not strings", () => {
    const draft = defaultDraft(["F", "M"]);
    draft.claimsVariant = "attribute_predicate";
    draft.predicateAttribute = "age";
    draft.predicateOp = ">=";
    draft.predicateValue = "30";
    const config = buildConfig(draft);
    expect(config.claims).toEqual({
      attribute_predicate: { attribute: "age", op: ">=", value: 30 },
    });
  });
});

describe("step validation", () => {
  it("increasing prioritarian weights get the inline message", () => {
    const draft = defaultDraft(["F", "M"]);
    draft.patternVariant = "prioritarian";
    draft.weights = [1, 2];
    expect(validateStep(4, draft)).toContain("weights must be non-increasing");
  });

  it("weights must cover every group", () => {
    const draft = defaultDraft(["F", "M"]);
    draft.patternVariant = "prioritarian";
    draft.weights = [1];
    expect(validateStep(4, draft).join(" ")).toMatch(/exactly 2 weights/);
  });

  it("subject utilities outside the slider range are flagged", () => {
    const draft = defaultDraft(["F", "M"]);
    draft.dsTable.tp = 12;
    expect(validateStep(2, draft).join(" ")).toMatch(/between -10 and 10/);
  });

  it("non-positive interest rate is invalid", () => {
    const draft = defaultDraft(["F", "M"]);
    draft.interestRate = 0;
    expect(validateStep(1, draft)).toHaveLength(1);
  });

  it("ordered predicate ops need numeric values", () => {
    const draft = defaultDraft(["F", "M"]);
    draft.claimsVariant = "attribute_predicate";
    draft.predicateAttribute = "region";
    draft.predicateOp = ">";
    draft.predicateValue = "north";
    expect(validateStep(3, draft).join(" ")).toMatch(/numeric/);
  });

  it("grid bounds are validated on step 5", () => {
    const draft = defaultDraft(["F", "M"]);
    draft.gridN = 1;
    expect(validateStep(5, draft).join(" ")).toMatch(/>= 2/);
    draft.gridN = 11;
    draft.gridHi = 1.5;
    expect(validateStep(5, draft).join(" ")).toMatch(/1\.01/);
  });
});

describe("step gating", () => {
  it("later steps are blocked while an earlier step is invalid", () => {
    const draft = defaultDraft(["F", "M"]);
    draft.dsTable.fp = -20; // step 2 invalid
    expect(canReach(2, draft)).toBe(true);
    expect(canReach(3, draft)).toBe(false);
    expect(canReach(5, draft)).toBe(false);
    expect(firstInvalidStep(draft)).toBe(2);
  });

  it("a fully valid draft reaches step 5", () => {
    const draft = defaultDraft(["F", "M"]);
    expect(canReach(5, draft)).toBe(true);
    expect(firstInvalidStep(draft)).toBeNull();
  });
});
