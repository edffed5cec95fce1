/** Read-side integration: bundles and reports straight from the gateway. */

import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import { renderChart } from "../src/charts/index.js";
import { BASE_URL, PARTICIPANT } from "./config.js";

const api = new ApiClient(BASE_URL, { participantId: PARTICIPANT });

describe("visualization bundles (live API)", () => {
  it("week 1 delivers exactly two chart documents, renderable as-is", async () => {
    const bundle = await api.visualizations(1);
    expect(bundle.manifest.charts).toHaveLength(2);
    expect(bundle.charts.map((c) => c.chart_id)).toEqual([
      "overall_summary",
      "prominent_stressor_context",
    ]);
    for (const spec of bundle.charts) {
      expect(renderChart(spec).startsWith("<svg")).toBe(true);
    }
  });

  it("week 14 delivers all sixteen, each renderable", async () => {
    const bundle = await api.visualizations(14);
    expect(bundle.charts).toHaveLength(16);
    for (const spec of bundle.charts) {
      const svg = renderChart(spec);
      expect(svg).toContain(`data-chart-id="${spec.chart_id}"`);
    }
  });

  it("autocomplete serves seeded stressors by prefix", async () => {
    const { suggestions } = await api.autocomplete("tra", 5);
    expect(suggestions[0]).toBe("traffic/transportation");
  });

  it("surfaces structured errors", async () => {
    await expect(api.visualizations(0)).rejects.toMatchObject({
      status: 400,
      code: "validation",
    } satisfies Partial<ApiError>);
  });
});
