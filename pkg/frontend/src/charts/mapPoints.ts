import type { ChartSpec } from "../types.js";
import { DEFAULT_FRAME, detailAttrs, el, linearScale, svgRoot, text, titleFor } from "../svg.js";
import { seriesColor } from "../palette.js";

/**
 * Stress report locations. Points are positioned by lon/lat extent over an
 * optional tile background (the renderer draws coordinates only; a map tile
 * layer can be configured underneath by the host page).
 */
export function renderMapPoints(spec: ChartSpec): string {
  const frame = DEFAULT_FRAME;
  const pts = spec.series[0]?.points ?? [];
  if (pts.length === 0) {
    return svgRoot(
      frame,
      spec.title,
      text(frame.width / 2, frame.height / 2, "no data yet", {
        "text-anchor": "middle",
        fill: "#777",
        class: "no-data",
      }),
      spec.chart_id,
    );
  }
  const lons = pts.map((p) => Number(p.x));
  const lats = pts.map((p) => Number(p.y));
  const pad = 0.002;
  const sx = linearScale([Math.min(...lons) - pad, Math.max(...lons) + pad], [frame.margin.left, frame.width - 180]);
  const sy = linearScale([Math.min(...lats) - pad, Math.max(...lats) + pad], [frame.height - frame.margin.bottom, frame.margin.top + 10]);
  const legendIndex = new Map<string, number>();
  (spec.legend.items ?? []).forEach((item, i) => legendIndex.set(item.label, i));

  let body = el("rect", {
    x: frame.margin.left,
    y: frame.margin.top + 10,
    width: frame.width - 180 - frame.margin.left,
    height: frame.height - frame.margin.bottom - frame.margin.top - 10,
    fill: "#f2f6f2",
    class: "map-backdrop",
  });
  for (const p of pts) {
    const location = String((p.detail ?? {})["location"] ?? p.label ?? "");
    const color = seriesColor(legendIndex.get(location) ?? 0);
    body += el(
      "circle",
      {
        cx: sx(Number(p.x)),
        cy: sy(Number(p.y)),
        r: 5,
        fill: color,
        "fill-opacity": 0.8,
        class: "map-point",
        ...detailAttrs(p.detail),
      },
      titleFor(p.detail, location),
    );
  }
  (spec.legend.items ?? []).forEach((item, i) => {
    const y = 70 + i * 20;
    body += el("circle", { cx: frame.width - 150, cy: y - 4, r: 5, fill: seriesColor(i) });
    const label = item.new_this_week ? `${item.label} (new this week)` : item.label;
    body += text(frame.width - 140, y, label, {
      "font-size": 11,
      class: item.new_this_week ? "legend-label new-location" : "legend-label",
    });
  });
  return svgRoot(frame, spec.title, body, spec.chart_id);
}
