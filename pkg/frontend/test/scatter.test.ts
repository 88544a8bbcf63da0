import { describe, expect, it } from "vitest";

import { createFrontView, setFilters, visiblePoints } from "../src/explorer";
import { renderScatter } from "../src/scatter";
import type { ParetoResponse } from "../src/types";

import paretoFixture from "./fixtures/pareto.json";

const pareto = paretoFixture as ParetoResponse;

function circleCount(svg: string, cls: string): number {
  return (svg.match(new RegExp(`class="pt ${cls}`, "g")) ?? []).length;
}

describe("scatter rendering", () => {
  it("renders one circle per visible point under each filter combination", () => {
    for (const viableOnly of [false, true]) {
      for (const frontOnly of [false, true]) {
        const view = setFilters(createFrontView(pareto), { viableOnly, frontOnly });
        const points = visiblePoints(view);
        const model = renderScatter(points, { floor: pareto.viability_floor });
        expect(model.pointCount).toBe(points.length);
        const circles = (model.svg.match(/<circle /g) ?? []).length;
        expect(circles).toBe(points.length);
      }
    }
  });

  it("highlights exactly the on_front points and grays the dominated ones", () => {
    const model = renderScatter(pareto.points, { floor: pareto.viability_floor });
    expect(model.frontCount).toBe(pareto.front_size);
    expect(circleCount(model.svg, "front")).toBe(pareto.front_size);
    expect(circleCount(model.svg, "dominated")).toBe(pareto.points.length - pareto.front_size);
  });

  it("draws the zero-utility reference line when the floor is in range", () => {
    const model = renderScatter(pareto.points, { floor: pareto.viability_floor });
    expect(model.hasZeroLine).toBe(true);
    expect(model.svg).toContain('class="zero-line"');
  });

  it("omits the reference line when every point is on one side", () => {
    const allAbove = pareto.points.filter((p) => p.dm_utility > 0);
    const model = renderScatter(allAbove, { floor: -1e12 });
    expect(model.hasZeroLine).toBe(false);
  });

  it("labels the extreme points", () => {
    const extremes = pareto.extremes!;
    const model = renderScatter(pareto.points, {
      maxDmIndex: extremes.max_dm_utility.index,
      maxFairnessIndex: extremes.max_fairness.index,
    });
    expect(model.svg).toContain("max utility");
    expect(model.svg).toContain("max fairness");
  });

  it("marks the selected point", () => {
    const target = pareto.points[3].index;
    const model = renderScatter(pareto.points, { selectedIndex: target });
    expect(model.svg).toContain(`data-index="${target}"`);
    expect((model.svg.match(/selected/g) ?? []).length).toBe(1);
  });

  it("handles an empty point set", () => {
    const model = renderScatter([], {});
    expect(model.pointCount).toBe(0);
    expect(model.svg).toContain("<svg");
  });
});
