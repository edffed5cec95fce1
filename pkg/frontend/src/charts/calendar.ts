import type { ChartSpec } from "../types.js";
import { DEFAULT_FRAME, detailAttrs, el, svgRoot, text, titleFor } from "../svg.js";
import { sequentialColor } from "../palette.js";

const WEEKDAYS = ["Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday", "Sunday"];

/** Weekday x hour heatmap; cell color encodes mean stress likelihood. */
export function renderCalendar(spec: ChartSpec): string {
  const frame = { ...DEFAULT_FRAME, height: 320 };
  const domain = spec.color_scale.domain ?? [0, 100];
  const cellW = (frame.width - frame.margin.left - frame.margin.right) / 24;
  const cellH = 30;
  const top = 52;
  let body = "";
  WEEKDAYS.forEach((day, row) => {
    body += text(frame.margin.left - 6, top + row * cellH + cellH / 2 + 4, day.slice(0, 3), {
      "text-anchor": "end",
      "font-size": 10,
    });
  });
  for (let h = 0; h < 24; h += 3) {
    body += text(frame.margin.left + h * cellW + cellW / 2, top + 7 * cellH + 16, String(h), {
      "text-anchor": "middle",
      "font-size": 9,
      fill: "#666",
    });
  }
  for (const cell of spec.series[0]?.points ?? []) {
    const row = WEEKDAYS.indexOf(String(cell.y));
    const hour = Number(cell.x);
    if (row < 0 || Number.isNaN(hour)) continue;
    body += el(
      "rect",
      {
        x: frame.margin.left + hour * cellW,
        y: top + row * cellH,
        width: cellW - 1,
        height: cellH - 1,
        fill: sequentialColor(cell.value ?? 0, domain),
        class: "calendar-cell",
        ...detailAttrs(cell.detail),
      },
      titleFor(cell.detail, `${cell.y} ${hour}:00 — mean score ${cell.value ?? 0}`),
    );
  }
  // color bar for the likelihood scale
  for (let i = 0; i <= 20; i++) {
    body += el("rect", {
      x: frame.width - 20,
      y: top + 180 - i * 9,
      width: 10,
      height: 9,
      fill: sequentialColor(domain[0] + ((domain[1] - domain[0]) * i) / 20, domain),
    });
  }
  body += text(frame.width - 24, top - 8, String(domain[1]), { "font-size": 9, "text-anchor": "end" });
  return svgRoot(frame, spec.title, body, spec.chart_id);
}
