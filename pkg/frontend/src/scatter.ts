/** Pure SVG rendering of the trade-off scatter.
 *
 * Fairness score on the x axis, decision-maker utility on the y axis.
 * Dominated points are small and gray, front points larger and colored,
 * and the viability floor shows as a red horizontal reference line.
 * Returns markup only; DOM wiring happens in main.ts.
 */

import type { ParetoPoint } from "./types";

export interface ScatterOptions {
  width?: number;
  height?: number;
  floor?: number;
  selectedIndex?: number | null;
  maxDmIndex?: number | null;
  maxFairnessIndex?: number | null;
}

export interface ScatterModel {
  svg: string;
  pointCount: number;
  frontCount: number;
  hasZeroLine: boolean;
}

const MARGIN = { top: 16, right: 16, bottom: 34, left: 64 };

function extent(values: number[]): [number, number] {
  let lo = Math.min(...values);
  let hi = Math.max(...values);
  if (lo === hi) {
    lo -= 1;
    hi += 1;
  }
  const pad = (hi - lo) * 0.05;
  return [lo - pad, hi + pad];
}

function escapeAttr(value: string): string {
  return value.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/"/g, "&quot;");
}

export function renderScatter(points: ParetoPoint[], options: ScatterOptions = {}): ScatterModel {
  const width = options.width ?? 640;
  const height = options.height ?? 420;
  const floor = options.floor ?? 0;
  if (points.length === 0) {
    return {
      svg: `<svg viewBox="0 0 ${width} ${height}" xmlns="http://www.w3.org/2000/svg"></svg>`,
      pointCount: 0,
      frontCount: 0,
      hasZeroLine: false,
    };
  }

  const [fsLo, fsHi] = extent(points.map((p) => p.fairness_score));
  const [dmLo, dmHi] = extent(points.map((p) => p.dm_utility));
  const plotW = width - MARGIN.left - MARGIN.right;
  const plotH = height - MARGIN.top - MARGIN.bottom;
  const x = (fs: number) => MARGIN.left + ((fs - fsLo) / (fsHi - fsLo)) * plotW;
  const y = (dm: number) => MARGIN.top + (1 - (dm - dmLo) / (dmHi - dmLo)) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg viewBox="0 0 ${width} ${height}" xmlns="http://www.w3.org/2000/svg" role="img">`,
  );
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}" fill="none" stroke="#ccc"/>`,
  );
  parts.push(
    `<text x="${MARGIN.left + plotW / 2}" y="${height - 6}" text-anchor="middle" class="axis-label">fairness score</text>`,
  );
  parts.push(
    `<text x="14" y="${MARGIN.top + plotH / 2}" text-anchor="middle" class="axis-label" transform="rotate(-90 14 ${MARGIN.top + plotH / 2})">decision-maker utility</text>`,
  );

  const hasZeroLine = floor >= dmLo && floor <= dmHi;
  if (hasZeroLine) {
    const fy = y(floor);
    parts.push(
      `<line class="zero-line" x1="${MARGIN.left}" y1="${fy}" x2="${MARGIN.left + plotW}" y2="${fy}" stroke="#cc2222" stroke-dasharray="5 3"/>`,
    );
  }

  // dominated first so the front stays on top
  const ordered = [...points.filter((p) => !p.on_front), ...points.filter((p) => p.on_front)];
  let frontCount = 0;
  for (const p of ordered) {
    const cx = x(p.fairness_score).toFixed(1);
    const cy = y(p.dm_utility).toFixed(1);
    if (p.on_front) frontCount += 1;
    const selected = options.selectedIndex === p.index;
    const cls = p.on_front ? "pt front" : "pt dominated";
    const r = p.on_front ? 5 : 2.2;
    const fill = p.on_front ? "#2b6cb0" : "#b8b8b8";
    parts.push(
      `<circle class="${cls}${selected ? " selected" : ""}" data-index="${p.index}" cx="${cx}" cy="${cy}" r="${r}" fill="${fill}"${selected ? ' stroke="#e07b00" stroke-width="3"' : ""}/>`,
    );
  }

  const labels: Array<[number | null | undefined, string]> = [
    [options.maxDmIndex, "max utility"],
    [options.maxFairnessIndex, "max fairness"],
  ];
  for (const [index, label] of labels) {
    if (index === null || index === undefined) continue;
    const p = points.find((q) => q.index === index);
    if (!p) continue;
    parts.push(
      `<text class="extreme-label" x="${(x(p.fairness_score) + 8).toFixed(1)}" y="${(y(p.dm_utility) - 8).toFixed(1)}">${escapeAttr(label)}</text>`,
    );
  }

  parts.push("</svg>");
  return { svg: parts.join(""), pointCount: points.length, frontCount, hasZeroLine };
}
