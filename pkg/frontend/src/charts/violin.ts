import type { ChartSpec } from "../types.js";
import { DEFAULT_FRAME, detailAttrs, el, linearScale, svgRoot, text, titleFor, round2 } from "../svg.js";
import { seriesColor } from "../palette.js";

/** Duration distributions: mirrored density outline with a box plot core. */
export function renderViolin(spec: ChartSpec): string {
  const frame = { ...DEFAULT_FRAME, height: 400 };
  const seriesList = spec.series.filter((s) => s.box && s.density);
  if (seriesList.length === 0) {
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
  const yLo = Math.min(...seriesList.map((s) => Math.min(...s.density!.x)));
  const yHi = Math.max(...seriesList.map((s) => Math.max(...s.density!.x)));
  const sy = linearScale([yLo, yHi], [frame.height - frame.margin.bottom, frame.margin.top + 14]);
  const slot = (frame.width - frame.margin.left - frame.margin.right) / seriesList.length;
  const maxDensity = Math.max(...seriesList.flatMap((s) => s.density!.y), 1e-12);
  let body = "";
  seriesList.forEach((s, i) => {
    const cx = frame.margin.left + slot * i + slot / 2;
    const halfWidth = Math.min(slot * 0.4, 56);
    const { x: grid, y: dens } = s.density!;
    const right = grid.map((v, k) => `${round2(cx + (dens[k] / maxDensity) * halfWidth)},${round2(sy(v))}`);
    const left = [...grid.keys()].reverse().map(
      (k) => `${round2(cx - (dens[k] / maxDensity) * halfWidth)},${round2(sy(grid[k]))}`,
    );
    let group = el("polygon", {
      points: [...right, ...left].join(" "),
      fill: seriesColor(i),
      "fill-opacity": 0.35,
      stroke: seriesColor(i),
      class: "violin-outline",
    });
    const box = s.box!;
    group += el(
      "rect",
      {
        x: round2(cx - 10),
        y: round2(sy(box.q3)),
        width: 20,
        height: round2(sy(box.q1) - sy(box.q3)),
        fill: "#fff",
        stroke: "#333",
        class: "violin-box",
        ...detailAttrs({ ...(s.detail ?? {}), ...box }),
      },
      titleFor(s.detail, `${s.label}: median ${box.median} min`),
    );
    group += el("line", {
      x1: round2(cx - 10), x2: round2(cx + 10),
      y1: round2(sy(box.median)), y2: round2(sy(box.median)),
      stroke: "#333", "stroke-width": 2, class: "violin-median",
    });
    for (const w of [box.whisker_low, box.whisker_high]) {
      group += el("line", {
        x1: cx, x2: cx,
        y1: round2(sy(w < box.q1 ? box.q1 : box.q3)), y2: round2(sy(w)),
        stroke: "#333", class: "violin-whisker",
      });
    }
    group += text(cx, frame.height - 12, s.label, { "text-anchor": "middle", "font-size": 10 });
    body += el("g", { class: "series", "data-series": s.label }, group);
  });
  return svgRoot(frame, spec.title, body, spec.chart_id);
}
