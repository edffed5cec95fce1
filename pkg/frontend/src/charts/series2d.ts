/**
 * Renderers for the week-indexed multi-series charts: lines, bubbles,
 * categorical scatters, grouped bars, and per-week bars. Every series group
 * carries data-series for legend toggling.
 */

import type { ChartSeries, ChartSpec } from "../types.js";
import { DEFAULT_FRAME, detailAttrs, el, linearScale, svgRoot, text, titleFor, round2 } from "../svg.js";
import { seriesColor } from "../palette.js";

function frameScales(spec: ChartSpec, yMax: number) {
  const frame = DEFAULT_FRAME;
  const weeks = Math.max(spec.week_index, 1);
  const sx = linearScale([1, Math.max(weeks, 2)], [frame.margin.left, frame.width - 170]);
  const sy = linearScale([0, Math.max(yMax, 1)], [frame.height - frame.margin.bottom, frame.margin.top + 10]);
  return { frame, sx, sy, weeks };
}

function weekAxis(frame: typeof DEFAULT_FRAME, sx: (v: number) => number, weeks: number): string {
  let body = el("line", {
    x1: frame.margin.left,
    y1: frame.height - frame.margin.bottom,
    x2: frame.width - 170,
    y2: frame.height - frame.margin.bottom,
    stroke: "#888",
  });
  for (let w = 1; w <= weeks; w++) {
    body += text(sx(w), frame.height - frame.margin.bottom + 16, String(w), {
      "text-anchor": "middle",
      "font-size": 9,
      fill: "#666",
    });
  }
  return body;
}

function sideLegend(frame: typeof DEFAULT_FRAME, series: ChartSeries[], toggleable: boolean): string {
  let body = "";
  series.slice(0, 14).forEach((s, i) => {
    const y = 56 + i * 20;
    body += el("rect", {
      x: frame.width - 156,
      y: y - 10,
      width: 12,
      height: 12,
      fill: seriesColor(i),
      class: toggleable ? "legend-swatch toggleable" : "legend-swatch",
      "data-series": s.label,
    });
    body += text(frame.width - 140, y, s.label, {
      "font-size": 10,
      class: "legend-label",
      "data-series": s.label,
    });
  });
  return body;
}

export function renderLines(spec: ChartSpec): string {
  const yMax = Math.max(
    ...spec.series.flatMap((s) => (s.points ?? []).map((p) => Number(p.y ?? 0))),
    1,
  );
  const { frame, sx, sy, weeks } = frameScales(spec, yMax);
  let body = weekAxis(frame, sx, weeks);
  spec.series.forEach((s, i) => {
    const pts = (s.points ?? []).map((p) => `${round2(sx(Number(p.x)))},${round2(sy(Number(p.y ?? 0)))}`);
    if (pts.length === 0) return;
    let group = el("polyline", {
      points: pts.join(" "),
      fill: "none",
      stroke: seriesColor(i),
      "stroke-width": 2,
    });
    for (const p of s.points ?? []) {
      group += el(
        "circle",
        {
          cx: round2(sx(Number(p.x))),
          cy: round2(sy(Number(p.y ?? 0))),
          r: 3,
          fill: seriesColor(i),
          ...detailAttrs({ week: p.x, count: p.y, ...(s.detail ?? {}) }),
        },
        titleFor(s.detail, `${s.label}, week ${p.x}: ${p.y}`),
      );
    }
    body += el("g", { class: "series", "data-series": s.label }, group);
  });
  body += sideLegend(frame, spec.series, spec.legend.toggleable === true);
  return svgRoot(frame, spec.title, body, spec.chart_id);
}

export function renderBubbles(spec: ChartSpec): string {
  const { frame, sx, weeks } = frameScales(spec, 1);
  const rowH = Math.min(24, (frame.height - 90) / Math.max(spec.series.length, 1));
  const maxSize = Math.max(
    ...spec.series.flatMap((s) => (s.points ?? []).map((p) => p.size ?? 0)),
    1,
  );
  let body = weekAxis(frame, sx, weeks);
  spec.series.forEach((s, i) => {
    const y = 56 + i * rowH;
    let group = text(frame.margin.left - 6, y + 3, s.label, {
      "text-anchor": "end",
      "font-size": 9,
    });
    for (const p of s.points ?? []) {
      const r = 3 + 9 * Math.sqrt((p.size ?? 0) / maxSize);
      group += el(
        "circle",
        {
          cx: round2(sx(Number(p.x))),
          cy: y,
          r: round2(r),
          fill: seriesColor(i),
          "fill-opacity": 0.75,
          class: "bubble",
          ...detailAttrs(p.detail ?? { week: p.x, count: p.size }),
        },
        titleFor({ ...(s.detail ?? {}), ...(p.detail ?? {}) }, `${s.label}, week ${p.x}: ${p.size}`),
      );
    }
    body += el("g", { class: "series", "data-series": s.label }, group);
  });
  body += sideLegend(frame, spec.series, spec.legend.toggleable === true);
  return svgRoot(frame, spec.title, body, spec.chart_id);
}

/** Scatter with a categorical y axis (time blocks or locations) per week. */
export function renderCategoryScatter(spec: ChartSpec): string {
  const categories: string[] = [];
  for (const s of spec.series) {
    for (const p of s.points ?? []) {
      const c = String(p.y);
      if (!categories.includes(c)) categories.push(c);
    }
  }
  categories.sort();
  const { frame, sx, weeks } = frameScales(spec, 1);
  const rowH = (frame.height - 110) / Math.max(categories.length, 1);
  let body = weekAxis(frame, sx, weeks);
  categories.forEach((cat, i) => {
    body += text(frame.margin.left - 6, 66 + i * rowH, cat, {
      "text-anchor": "end",
      "font-size": 9,
    });
  });
  const maxSize = Math.max(
    ...spec.series.flatMap((s) => (s.points ?? []).map((p) => p.size ?? 1)),
    1,
  );
  spec.series.forEach((s, i) => {
    let group = "";
    for (const p of s.points ?? []) {
      const row = categories.indexOf(String(p.y));
      const jitter = ((i % 5) - 2) * 3;
      group += el(
        "circle",
        {
          cx: round2(sx(Number(p.x))),
          cy: round2(62 + row * rowH + jitter),
          r: round2(2.5 + 5 * Math.sqrt((p.size ?? 1) / maxSize)),
          fill: seriesColor(i),
          "fill-opacity": 0.7,
          ...detailAttrs(p.detail),
        },
        titleFor({ ...(s.detail ?? {}), ...(p.detail ?? {}) }, `${s.label}, week ${p.x}: ${p.y}`),
      );
    }
    body += el("g", { class: "series", "data-series": s.label }, group);
  });
  body += sideLegend(frame, spec.series, spec.legend.toggleable === true);
  return svgRoot(frame, spec.title, body, spec.chart_id);
}

const WEEKDAY_ORDER = ["Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday", "Sunday"];

export function renderGroupedBars(spec: ChartSpec): string {
  const frame = DEFAULT_FRAME;
  const yMax = Math.max(
    ...spec.series.flatMap((s) => (s.points ?? []).map((p) => Number(p.y ?? 0))),
    1,
  );
  const sy = linearScale([0, yMax], [frame.height - frame.margin.bottom, frame.margin.top + 10]);
  const plotW = frame.width - 170 - frame.margin.left;
  const slot = plotW / 7;
  const nSeries = Math.max(spec.series.length, 1);
  const barW = Math.max(1.5, Math.min(10, (slot - 8) / nSeries));
  let body = "";
  WEEKDAY_ORDER.forEach((day, i) => {
    body += text(frame.margin.left + slot * i + slot / 2, frame.height - frame.margin.bottom + 16, day.slice(0, 3), {
      "text-anchor": "middle",
      "font-size": 10,
    });
  });
  spec.series.forEach((s, i) => {
    let group = "";
    for (const p of s.points ?? []) {
      const dayIndex = WEEKDAY_ORDER.indexOf(String(p.x));
      if (dayIndex < 0) continue;
      const x = frame.margin.left + slot * dayIndex + 4 + i * barW;
      const y = sy(Number(p.y ?? 0));
      group += el(
        "rect",
        {
          x: round2(x),
          y: round2(y),
          width: round2(barW),
          height: round2(frame.height - frame.margin.bottom - y),
          fill: seriesColor(i),
          ...detailAttrs(p.detail),
        },
        titleFor({ ...(s.detail ?? {}), ...(p.detail ?? {}) }, `${s.label}, ${p.x}: ${p.y}`),
      );
    }
    body += el("g", { class: "series", "data-series": s.label }, group);
  });
  body += sideLegend(frame, spec.series, spec.legend.toggleable === true);
  return svgRoot(frame, spec.title, body, spec.chart_id);
}

/** Weekly average-duration bars; the current week is flagged in red. */
export function renderBarsByWeek(spec: ChartSpec): string {
  const frame = DEFAULT_FRAME;
  const yMax = Math.max(
    ...spec.series.flatMap((s) => (s.points ?? []).map((p) => Number(p.y ?? 0))),
    1,
  );
  const { sx } = { sx: linearScale([1, Math.max(spec.week_index, 2)], [frame.margin.left, frame.width - 170]) };
  const bandH = (frame.height - 100) / Math.max(spec.series.length, 1);
  let body = "";
  spec.series.forEach((s, i) => {
    const baseY = 50 + (i + 1) * bandH;
    const scale = (bandH - 14) / yMax;
    let group = text(frame.margin.left - 6, baseY - bandH / 2, s.label, {
      "text-anchor": "end",
      "font-size": 9,
    });
    for (const p of s.points ?? []) {
      const h = Number(p.y ?? 0) * scale;
      group += el(
        "rect",
        {
          x: round2(sx(Number(p.x)) - 5),
          y: round2(baseY - h),
          width: 10,
          height: round2(h),
          fill: p.current_week ? "#D55E00" : "#9aa0a6",
          class: p.current_week ? "bar current-week" : "bar",
          ...detailAttrs({ week: p.x, avg_duration_min: p.y }),
        },
        titleFor(s.detail, `${s.label}, week ${p.x}: ${p.y} min`),
      );
    }
    body += el("g", { class: "series", "data-series": s.label }, group);
  });
  return svgRoot(frame, spec.title, body, spec.chart_id);
}

export function renderBars(spec: ChartSpec): string {
  const frame = { ...DEFAULT_FRAME, height: 280 };
  const bars = spec.series[0]?.points ?? [];
  const maxValue = Math.max(...bars.map((b) => b.value ?? 0), 1);
  const sx = linearScale([0, maxValue], [0, frame.width - frame.margin.left - 160]);
  let body = "";
  bars.forEach((bar, i) => {
    const y = 50 + i * 40;
    body += el(
      "rect",
      {
        x: frame.margin.left,
        y,
        width: round2(sx(bar.value ?? 0)),
        height: 24,
        fill: seriesColor(i),
        class: "rank-bar",
        ...detailAttrs(bar.detail),
      },
      titleFor(bar.detail, `${bar.label ?? ""}: ${bar.value ?? 0}`),
    );
    body += text(frame.margin.left + sx(bar.value ?? 0) + 6, y + 16, `${bar.label ?? ""} (${bar.value ?? 0})`, {
      "font-size": 11,
    });
  });
  return svgRoot(frame, spec.title, body, spec.chart_id);
}
