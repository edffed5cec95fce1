/** All 16 chart kinds render from golden fixtures produced by the platform. */

import { readFileSync, readdirSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { RENDERERS, renderChart } from "../src/charts/index.js";
import type { ChartSpec } from "../src/types.js";

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "fixtures");

function loadFixture(name: string): ChartSpec {
  return JSON.parse(readFileSync(join(FIXTURES, `${name}.json`), "utf-8")) as ChartSpec;
}

const CHART_IDS = Object.keys(RENDERERS);

describe("chart renderers", () => {
  it("covers exactly the 16 chart kinds", () => {
    expect(CHART_IDS).toHaveLength(16);
    const fixtureFiles = readdirSync(FIXTURES).filter((f) => f.endsWith(".json"));
    for (const id of CHART_IDS) {
      expect(fixtureFiles).toContain(`${id}.json`);
    }
  });

  it.each(CHART_IDS)("renders %s from its golden fixture", (chartId) => {
    const spec = loadFixture(chartId);
    const svg = renderChart(spec);
    expect(svg.startsWith("<svg")).toBe(true);
    expect(svg).toContain(`data-chart-id="${chartId}"`);
    expect(svg).toContain(spec.title);
    expect(svg).toContain("viewBox");
    expect(svg).toContain('width="100%"'); // responsive layout
  });

  it("is deterministic for identical specs", () => {
    for (const chartId of CHART_IDS) {
      const spec = loadFixture(chartId);
      expect(renderChart(spec)).toEqual(renderChart(loadFixture(chartId)));
    }
  });

  it("shows full text for abbreviated labels in detail payloads", () => {
    const spec = loadFixture("stressor_prevalence");
    const svg = renderChart(spec);
    const abbreviated = (spec.series[0].points ?? []).filter(
      (p) => p.detail && typeof p.detail["full_text"] === "string",
    );
    expect(abbreviated.length).toBeGreaterThan(0);
    for (const point of abbreviated) {
      expect(svg).toContain(String(point.detail!["full_text"]));
    }
  });

  it("renders gauges with the four summary values", () => {
    const spec = loadFixture("overall_summary");
    const svg = renderChart(spec);
    for (const gauge of spec.series[0].points ?? []) {
      expect(svg).toContain(String(gauge.label));
    }
  });

  it("renders the empty-data placeholder", () => {
    const spec = loadFixture("empty_overall_summary");
    // every gauge is flagged no_data, so values render as "no data"
    const svg = renderChart(loadFixture("overall_summary"));
    const emptySvg = RENDERERS["overall_summary"](spec);
    expect(emptySvg).toContain("no data");
    expect(svg).not.toEqual(emptySvg);

    const noSeries: ChartSpec = { ...spec, series: [] };
    expect(renderChart(noSeries)).toContain("no data yet");
  });

  it("marks calendar cells with the sequential scale", () => {
    const spec = loadFixture("calendar_view");
    const svg = renderChart(spec);
    const cells = svg.match(/class="calendar-cell"/g) ?? [];
    expect(cells.length).toBe((spec.series[0].points ?? []).length);
    expect(svg).toContain("rgb(");
  });

  it("word cloud font size grows with weight", () => {
    const spec = loadFixture("word_cloud_stressors");
    const svg = renderChart(spec);
    const sizes = [...svg.matchAll(/font-size="(\d+)" [^>]*class="cloud-word" data-weight="(\d+)"/g)].map(
      (m) => [Number(m[1]), Number(m[2])] as const,
    );
    expect(sizes.length).toBeGreaterThan(2);
    const sorted = [...sizes].sort((a, b) => b[1] - a[1]);
    for (let i = 1; i < sorted.length; i++) {
      expect(sorted[i - 1][0]).toBeGreaterThanOrEqual(sorted[i][0]);
    }
  });

  it("weekly trend emits one toggleable group per stressor", () => {
    const spec = loadFixture("weekly_trend");
    const svg = renderChart(spec);
    const groups = svg.match(/<g class="series" data-series="/g) ?? [];
    expect(groups.length).toBe(spec.series.length);
    expect(svg).toContain('class="legend-swatch toggleable"');
  });

  it("violin series carry box statistics and density outlines", () => {
    const spec = loadFixture("duration_distribution");
    const svg = renderChart(spec);
    expect(svg.match(/class="violin-box"/g)?.length).toBe(spec.series.length);
    expect(svg.match(/class="violin-outline"/g)?.length).toBe(spec.series.length);
  });

  it("map view flags locations that are new this week", () => {
    const spec = loadFixture("map_view");
    spec.legend.items = [
      { label: "office", new_this_week: false },
      { label: "park", new_this_week: true },
    ];
    const svg = renderChart(spec);
    expect(svg).toContain("park (new this week)");
  });

  it("prevalent duration highlights the current week in red", () => {
    const spec = loadFixture("prevalent_duration");
    const svg = renderChart(spec);
    expect(svg).toContain('class="bar current-week"');
  });

  it("rejects unknown chart kinds", () => {
    const spec = { ...loadFixture("overall_summary"), chart_id: "mystery" };
    expect(() => renderChart(spec)).toThrow(/no renderer/);
  });
});
