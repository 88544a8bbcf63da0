/** Five-step value-elicitation wizard.
 *
 * Step 1: how the decision maker's benefit/harm is assessed.
 * Step 2: how the decision subjects' benefit/harm is assessed.
 * Step 3: who holds comparable claims, and which attribute defines groups.
 * Step 4: how the distribution between positions is scored.
 * Step 5: sweep and pick the trade-off point.
 *
 * A step is reachable only when all earlier steps validate; the draft
 * serializes to a schema-valid config before any sweep is requested.
 */

import type { ValueConfigDoc } from "./types";

export interface Table4 {
  tp: number;
  fp: number;
  fn: number;
  tn: number;
}

export type ClaimsVariant = "all" | "outcome_equals" | "attribute_predicate";
export type PatternVariant = "egalitarian" | "maximin" | "prioritarian" | "sufficientarian";

export interface WizardDraft {
  dmVariant: "lending" | "table";
  interestRate: number;
  dmTable: Table4;
  dmAmountScaled: boolean;
  dsTable: Table4;
  dsAmountScaled: boolean;
  groupColumn: string;
  groupCount: number;
  claimsVariant: ClaimsVariant;
  outcomeY: 0 | 1;
  predicateAttribute: string;
  predicateOp: string;
  predicateValue: string;
  patternVariant: PatternVariant;
  weights: number[];
  tau: number;
  mode: "expected" | "empirical";
  gridN: number;
  gridLo: number;
  gridHi: number;
  viabilityFloor: number;
}

export const DS_SLIDER_MIN = -10;
export const DS_SLIDER_MAX = 10;
export const PREDICATE_OPS = ["=", "!=", "<", "<=", ">", ">="] as const;
const ORDERED_OPS = new Set(["<", "<=", ">", ">="]);

export const STEP_TITLES = [
  "Decision-maker utility",
  "Decision-subject utility",
  "Relevant positions",
  "Pattern of justice",
  "Sweep & trade-off",
] as const;

/** Shown on step 3. Original guidance: pick the grouping where unequal
 * treatment is most likely to surface. */
export const POSITIONS_GUIDANCE =
  "Choose the group attribute along which you expect unequal utility, and " +
  "the factor that gives people an equal claim to it. Unequal treatment can " +
  "enter at several stages: life circumstances can shape the abilities people " +
  "get to develop, the recorded data may measure those abilities unevenly " +
  "across groups, and the decision step itself may treat equal records " +
  "differently. Pick the grouping where you suspect such distortions, and a " +
  "claim rule (for example: only people whose true outcome is positive) that " +
  "matches who you believe deserves the same benefit.";

export function defaultDraft(groups: string[] = [], groupColumn = "group"): WizardDraft {
  return {
    dmVariant: "lending",
    interestRate: 0.1,
    dmTable: { tp: 0.1, fp: -1, fn: 0, tn: 0 },
    dmAmountScaled: true,
    dsTable: { tp: 10, fp: -5, fn: -1, tn: 0 },
    dsAmountScaled: false,
    groupColumn,
    groupCount: groups.length,
    claimsVariant: "outcome_equals",
    outcomeY: 1,
    predicateAttribute: "",
    predicateOp: ">=",
    predicateValue: "",
    patternVariant: "maximin",
    weights: groups.map((_, i) => groups.length - i),
    tau: 0,
    mode: "expected",
    gridN: 101,
    gridLo: 0,
    gridHi: 1,
    viabilityFloor: 0,
  };
}

function finite(value: number): boolean {
  return typeof value === "number" && Number.isFinite(value);
}

function tableMessages(table: Table4, min: number | null, max: number | null): string[] {
  const messages: string[] = [];
  for (const [cell, value] of Object.entries(table)) {
    if (!finite(value)) {
      messages.push(`${cell} must be a finite number`);
    } else if (min !== null && max !== null && (value < min || value > max)) {
      messages.push(`${cell} must be between ${min} and ${max}`);
    }
  }
  return messages;
}

/** Inline validation messages for one step; empty means valid. */
export function validateStep(step: number, draft: WizardDraft): string[] {
  switch (step) {
    case 1: {
      if (draft.dmVariant === "lending") {
        return finite(draft.interestRate) && draft.interestRate > 0
          ? []
          : ["interest rate must be a positive number"];
      }
      return tableMessages(draft.dmTable, null, null);
    }
    case 2:
      return tableMessages(draft.dsTable, DS_SLIDER_MIN, DS_SLIDER_MAX);
    case 3: {
      const messages: string[] = [];
      if (!draft.groupColumn.trim()) {
        messages.push("group column is required");
      }
      if (draft.claimsVariant === "outcome_equals" && draft.outcomeY !== 0 && draft.outcomeY !== 1) {
        messages.push("outcome must be 0 or 1");
      }
      if (draft.claimsVariant === "attribute_predicate") {
        if (!draft.predicateAttribute.trim()) {
          messages.push("predicate attribute is required");
        }
        if (!PREDICATE_OPS.includes(draft.predicateOp as (typeof PREDICATE_OPS)[number])) {
          messages.push(`operator must be one of ${PREDICATE_OPS.join(" ")}`);
        }
        if (!draft.predicateValue.trim()) {
          messages.push("predicate value is required");
        } else if (
          ORDERED_OPS.has(draft.predicateOp) &&
          !finite(Number(draft.predicateValue))
        ) {
          messages.push("ordered comparisons need a numeric value");
        }
      }
      return messages;
    }
    case 4: {
      if (draft.patternVariant === "prioritarian") {
        const w = draft.weights;
        const messages: string[] = [];
        if (w.length === 0 || w.some((x) => !finite(x) || x < 0)) {
          messages.push("weights must be non-negative numbers");
        }
        if (w.some((x, i) => i > 0 && x > w[i - 1])) {
          messages.push("weights must be non-increasing");
        }
        if (w.length > 0 && !w.some((x) => x > 0)) {
          messages.push("at least one weight must be positive");
        }
        if (draft.groupCount > 0 && w.length !== draft.groupCount) {
          messages.push(`need exactly ${draft.groupCount} weights (one per group)`);
        }
        return messages;
      }
      if (draft.patternVariant === "sufficientarian") {
        return finite(draft.tau) ? [] : ["sufficiency level must be a finite number"];
      }
      return [];
    }
    case 5: {
      const messages: string[] = [];
      if (!Number.isInteger(draft.gridN) || draft.gridN < 2) {
        messages.push("grid size must be an integer >= 2");
      }
      if (!(finite(draft.gridLo) && finite(draft.gridHi)) || !(0 <= draft.gridLo && draft.gridLo < draft.gridHi && draft.gridHi <= 1.01)) {
        messages.push("grid range must satisfy 0 <= lo < hi <= 1.01");
      }
      if (!finite(draft.viabilityFloor)) {
        messages.push("viability floor must be a finite number");
      }
      return messages;
    }
    default:
      return [`unknown step ${step}`];
  }
}

/** A step can be shown only when every earlier step validates. */
export function canReach(step: number, draft: WizardDraft): boolean {
  for (let s = 1; s < step; s++) {
    if (validateStep(s, draft).length > 0) return false;
  }
  return true;
}

export function firstInvalidStep(draft: WizardDraft): number | null {
  for (let s = 1; s <= 5; s++) {
    if (validateStep(s, draft).length > 0) return s;
  }
  return null;
}

/** Serialize the draft into the service's config document. Only valid
 * drafts (firstInvalidStep === null) produce a submittable config. */
export function buildConfig(draft: WizardDraft): ValueConfigDoc {
  const dm_utility =
    draft.dmVariant === "lending"
      ? { lending: { interest_rate: draft.interestRate } }
      : { table: { ...draft.dmTable, amount_scaled: draft.dmAmountScaled } };

  let claims: ValueConfigDoc["claims"];
  if (draft.claimsVariant === "all") {
    claims = { all: {} };
  } else if (draft.claimsVariant === "outcome_equals") {
    claims = { outcome_equals: { y: draft.outcomeY } };
  } else {
    const numeric = Number(draft.predicateValue);
    claims = {
      attribute_predicate: {
        attribute: draft.predicateAttribute.trim(),
        op: draft.predicateOp,
        value: Number.isFinite(numeric) && draft.predicateValue.trim() !== "" ? numeric : draft.predicateValue,
      },
    };
  }

  let pattern: ValueConfigDoc["pattern"];
  switch (draft.patternVariant) {
    case "egalitarian":
      pattern = { egalitarian: {} };
      break;
    case "maximin":
      pattern = { maximin: {} };
      break;
    case "prioritarian":
      pattern = { prioritarian: { weights: [...draft.weights] } };
      break;
    case "sufficientarian":
      pattern = { sufficientarian: { tau: draft.tau } };
      break;
  }

  return {
    dm_utility,
    ds_utility: { base: { ...draft.dsTable }, amount_scaled: draft.dsAmountScaled },
    claims,
    positions: { group_column: draft.groupColumn.trim() },
    pattern,
    mode: draft.mode,
    grid: { n: draft.gridN, lo: draft.gridLo, hi: draft.gridHi },
    viability_floor: draft.viabilityFloor,
  };
}
