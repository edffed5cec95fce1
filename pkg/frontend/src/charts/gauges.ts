import type { ChartSpec } from "../types.js";
import { DEFAULT_FRAME, arcPath, el, svgRoot, text, round2 } from "../svg.js";
import { seriesColor } from "../palette.js";

/** Four angular gauges: overall vs current-week stress load and stressor counts. */
export function renderGauges(spec: ChartSpec): string {
  const frame = { ...DEFAULT_FRAME, height: 240 };
  const gauges = spec.series[0]?.points ?? [];
  const slot = frame.width / Math.max(gauges.length, 1);
  const maxValue = Math.max(...gauges.map((g) => g.value ?? 0), 1);
  let body = "";
  gauges.forEach((gauge, i) => {
    const cx = slot * i + slot / 2;
    const cy = 150;
    const r = Math.min(slot * 0.36, 64);
    const value = gauge.value ?? 0;
    const sweep = Math.PI * Math.min(value / maxValue, 1);
    body += el("path", {
      d: arcPath(cx, cy, r - 12, r, -Math.PI / 2, Math.PI / 2),
      fill: "#eee",
    });
    if (!gauge.no_data && sweep > 0) {
      body += el("path", {
        d: arcPath(cx, cy, r - 12, r, -Math.PI / 2, -Math.PI / 2 + sweep),
        fill: seriesColor(i),
        class: "gauge-fill",
      });
    }
    body += text(cx, cy - 8, gauge.no_data ? "no data" : String(round2(value)), {
      "text-anchor": "middle",
      "font-size": 18,
      class: gauge.no_data ? "no-data" : "gauge-value",
    });
    const label = gauge.label ?? "";
    body += text(cx, cy + 28, label, {
      "text-anchor": "middle",
      "font-size": 10,
      fill: "#444",
    });
  });
  return svgRoot(frame, spec.title, body, spec.chart_id);
}
