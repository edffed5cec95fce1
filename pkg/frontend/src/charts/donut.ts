import type { ChartSpec } from "../types.js";
import { DEFAULT_FRAME, arcPath, detailAttrs, el, svgRoot, text, titleFor } from "../svg.js";
import { seriesColor } from "../palette.js";

/** Percentage donut (stressor prevalence, location prominence). */
export function renderDonut(spec: ChartSpec): string {
  const frame = DEFAULT_FRAME;
  const segments = (spec.series[0]?.points ?? []).filter((p) => (p.value ?? 0) > 0);
  const cx = 210;
  const cy = 200;
  let body = "";
  let angle = 0;
  const tau = 2 * Math.PI;
  segments.forEach((seg, i) => {
    const span = ((seg.value ?? 0) / 100) * tau;
    body += el(
      "path",
      {
        d: arcPath(cx, cy, 60, 120, angle, Math.min(angle + span, angle + tau - 1e-9)),
        fill: seriesColor(i),
        stroke: "#fff",
        "stroke-width": 1,
        class: "donut-segment",
        ...detailAttrs({ percent: seg.value, ...(seg.detail ?? {}) }),
      },
      titleFor(seg.detail, `${seg.label ?? ""}: ${(seg.value ?? 0).toFixed(1)}%`),
    );
    angle += span;
  });
  // side legend with percentages
  segments.slice(0, 12).forEach((seg, i) => {
    const y = 70 + i * 22;
    body += el("rect", { x: 380, y: y - 10, width: 12, height: 12, fill: seriesColor(i) });
    body += text(398, y, `${seg.label ?? ""} ${(seg.value ?? 0).toFixed(1)}%`, {
      "font-size": 11,
      class: "legend-label",
    });
  });
  if (segments.length === 0) {
    body += text(cx, cy, "no data yet", { "text-anchor": "middle", fill: "#777", class: "no-data" });
  }
  return svgRoot(frame, spec.title, body, spec.chart_id);
}
