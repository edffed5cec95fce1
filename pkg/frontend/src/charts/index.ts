/**
 * Chart dispatch: one renderer per chart kind, chosen by chart_id.
 *
 * Every renderer is a pure function ChartSpec -> SVG string; the host page
 * injects the markup and wires interactivity (legend toggles, detail taps)
 * through `attachInteractivity`.
 */

import type { ChartSpec } from "../types.js";
import { emptyPlaceholder } from "../svg.js";
import { renderGauges } from "./gauges.js";
import { renderSunburst } from "./sunburst.js";
import { renderDonut } from "./donut.js";
import { renderCalendar } from "./calendar.js";
import { renderMapPoints } from "./mapPoints.js";
import { renderViolin } from "./violin.js";
import { renderWordCloud } from "./wordCloud.js";
import {
  renderBars,
  renderBarsByWeek,
  renderBubbles,
  renderCategoryScatter,
  renderGroupedBars,
  renderLines,
} from "./series2d.js";

export const RENDERERS: Record<string, (spec: ChartSpec) => string> = {
  overall_summary: renderGauges,
  prominent_stressor_context: renderSunburst,
  map_view: renderMapPoints,
  stressor_prevalence: renderDonut,
  location_prominence: renderDonut,
  calendar_view: renderCalendar,
  stressor_ranking: renderBars,
  weekly_trend: renderLines,
  weekly_prevalence: renderBubbles,
  time_of_day_trend: renderCategoryScatter,
  location_trend: renderCategoryScatter,
  day_of_week: renderGroupedBars,
  duration_distribution: renderViolin,
  prevalent_duration: renderBarsByWeek,
  word_cloud_stressors: renderWordCloud,
  word_cloud_locations: renderWordCloud,
};

export function renderChart(spec: ChartSpec): string {
  const renderer = RENDERERS[spec.chart_id];
  if (!renderer) {
    throw new Error(`no renderer for chart kind: ${spec.chart_id}`);
  }
  if (isEmpty(spec)) {
    return emptyPlaceholder(spec.title, spec.chart_id);
  }
  return renderer(spec);
}

function isEmpty(spec: ChartSpec): boolean {
  if (spec.series.length === 0) return true;
  return spec.series.every((s) => {
    const hasPoints = (s.points?.length ?? 0) > 0;
    const hasDistribution = Boolean(s.box && s.density);
    return !hasPoints && !hasDistribution;
  });
}
