/** View model of the Pareto explorer.
 *
 * Pure filtering/selection over service payloads: the explorer never
 * recomputes utilities, fairness scores or dominance — it only decides
 * which payload points are visible, which is selected, and what the
 * per-group bars display.
 */

import { formatValue } from "./format";
import type { ParetoPoint, ParetoResponse, RuleDetail } from "./types";

export interface FrontFilters {
  viableOnly: boolean;
  frontOnly: boolean;
}

export interface FrontView {
  pareto: ParetoResponse;
  filters: FrontFilters;
  selectedIndex: number | null;
}

export function createFrontView(pareto: ParetoResponse): FrontView {
  return { pareto, filters: { viableOnly: false, frontOnly: false }, selectedIndex: null };
}

export function visiblePoints(view: FrontView): ParetoPoint[] {
  return view.pareto.points.filter(
    (p) => (!view.filters.viableOnly || p.viable) && (!view.filters.frontOnly || p.on_front),
  );
}

export function setFilters(view: FrontView, filters: Partial<FrontFilters>): FrontView {
  const next: FrontView = { ...view, filters: { ...view.filters, ...filters } };
  // invariant: the selected point stays a member of the displayed set
  if (next.selectedIndex !== null && !visiblePoints(next).some((p) => p.index === next.selectedIndex)) {
    next.selectedIndex = null;
  }
  return next;
}

export function selectPoint(view: FrontView, index: number): FrontView {
  if (!visiblePoints(view).some((p) => p.index === index)) {
    return view;
  }
  return { ...view, selectedIndex: index };
}

export function selectedPoint(view: FrontView): ParetoPoint | null {
  if (view.selectedIndex === null) return null;
  return view.pareto.points.find((p) => p.index === view.selectedIndex) ?? null;
}

export interface GroupBar {
  group: string;
  /** exact payload value */
  utility: number;
  /** value as displayed, rounded to 3 decimals */
  display: string;
  claimCount: number;
  acceptanceRate: number;
}

export function groupBars(detail: RuleDetail, groups: string[]): GroupBar[] {
  return groups.map((group) => ({
    group,
    utility: detail.position_utilities[group],
    display: formatValue(detail.position_utilities[group]),
    claimCount: detail.claim_counts[group],
    acceptanceRate: detail.acceptance_rates[group],
  }));
}

/** Points at or above the decision-maker's zero line (dm_utility >= floor).
 * With the default floor this is exactly the payload's viable flag. */
export function aboveZeroLine(points: ParetoPoint[], floor: number): ParetoPoint[] {
  return points.filter((p) => p.dm_utility >= floor);
}

export function staleBannerNeeded(resultDigest: string | null, configDigest: string | null): boolean {
  return resultDigest !== null && configDigest !== null && resultDigest !== configDigest;
}
