import type { ChartSpec } from "../types.js";
import { DEFAULT_FRAME, el, svgRoot, text } from "../svg.js";
import { seriesColor } from "../palette.js";

const MIN_FONT = 10;
const MAX_FONT = 34;

/** Frequency-weighted word layout: deterministic row flow, size by count. */
export function renderWordCloud(spec: ChartSpec): string {
  const frame = { ...DEFAULT_FRAME, height: 400 };
  const words = spec.series[0]?.points ?? [];
  if (words.length === 0) {
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
  const maxWeight = Math.max(...words.map((w) => w.weight ?? 1));
  let x = frame.margin.left;
  let y = 70;
  let body = "";
  words.slice(0, 60).forEach((word, i) => {
    const weight = word.weight ?? 1;
    const size = MIN_FONT + (MAX_FONT - MIN_FONT) * Math.sqrt(weight / maxWeight);
    const label = word.label ?? "";
    const estWidth = label.length * size * 0.58 + 14;
    if (x + estWidth > frame.width - frame.margin.right) {
      x = frame.margin.left;
      y += MAX_FONT + 6;
    }
    if (y > frame.height - 18) return;
    body += el(
      "text",
      {
        x,
        y,
        "font-size": Math.round(size),
        fill: seriesColor(i),
        class: "cloud-word",
        "data-weight": weight,
      },
      escapeWord(label),
    );
    x += estWidth;
  });
  return svgRoot(frame, spec.title, body, spec.chart_id);
}

function escapeWord(label: string): string {
  return label
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;");
}
