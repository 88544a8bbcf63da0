/** Payload types mirroring the service's JSON responses. */

export interface SessionCreated {
  id: string;
  individuals: number;
  groups: string[];
}

export interface ConfigAccepted {
  config_digest: string;
  stale_result: boolean;
}

export type SessionStatus = "idle" | "sweeping" | "ready" | "error";

export interface StatusResponse {
  id: string;
  status: SessionStatus;
  progress: number;
  config_digest: string | null;
  result_digest: string | null;
  stale: boolean;
  sweep_size: number | null;
  front_size: number | null;
  error: string | null;
}

export interface ParetoPoint {
  index: number;
  thresholds: Record<string, number>;
  dm_utility: number;
  fairness_score: number;
  position_utilities: Record<string, number>;
  claim_counts: Record<string, number>;
  on_front: boolean;
  viable: boolean;
}

export interface ParetoResponse {
  config_digest: string;
  groups: string[];
  sweep_size: number;
  front_size: number;
  viability_floor: number;
  extremes: {
    max_dm_utility: ParetoPoint;
    max_fairness: ParetoPoint;
  } | null;
  points: ParetoPoint[];
}

export interface RuleDetail {
  index: number;
  thresholds: Record<string, number>;
  dm_utility: number;
  fairness_score: number;
  position_utilities: Record<string, number>;
  claim_counts: Record<string, number>;
  acceptance_rates: Record<string, number>;
  accepted_counts: Record<string, number>;
  group_sizes: Record<string, number>;
  on_front: boolean;
  viable: boolean;
}

export interface SelectionRecord {
  session_id: string;
  dataset_digest: string;
  config_digest: string;
  config: unknown;
  thresholds: Record<string, number>;
  dm_utility: number;
  fairness_score: number;
  position_utilities: Record<string, number>;
  claim_counts: Record<string, number>;
  selected_at: string;
}

export interface ErrorPayload {
  code: string;
  message: string;
  detail: Record<string, unknown> | null;
}

/** The value-configuration document sent to PUT /config. */
export interface ValueConfigDoc {
  dm_utility:
    | { lending: { interest_rate: number } }
    | { table: { tp: number; fp: number; fn: number; tn: number; amount_scaled?: boolean } };
  ds_utility: {
    base: { tp: number; fp: number; fn: number; tn: number };
    per_group_overrides?: Record<string, { tp: number; fp: number; fn: number; tn: number }>;
    amount_scaled?: boolean;
  };
  claims:
    | { all: Record<string, never> }
    | { outcome_equals: { y: 0 | 1 } }
    | { attribute_predicate: { attribute: string; op: string; value: number | string } };
  positions?: { group_column: string };
  pattern:
    | { egalitarian: Record<string, never> }
    | { maximin: Record<string, never> }
    | { prioritarian: { weights: number[] } }
    | { sufficientarian: { tau: number } };
  mode?: "expected" | "empirical";
  grid?: { n?: number; lo?: number; hi?: number } | { per_group: Record<string, number[]> };
  viability_floor?: number;
}
