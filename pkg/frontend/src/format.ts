/** Display formatting. Values are shown rounded to 3 decimals; the
 * underlying payload numbers are never modified. */

export const DISPLAY_DECIMALS = 3;

export function formatValue(value: number, decimals = DISPLAY_DECIMALS): string {
  if (!Number.isFinite(value)) return String(value);
  return value.toFixed(decimals);
}

export function formatThresholds(thresholds: Record<string, number>): string {
  return Object.entries(thresholds)
    .map(([group, t]) => `${group}=${formatValue(t)}`)
    .join(", ");
}
