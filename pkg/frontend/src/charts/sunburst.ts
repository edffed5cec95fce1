import type { ChartPoint, ChartSpec } from "../types.js";
import { DEFAULT_FRAME, arcPath, detailAttrs, el, svgRoot, text, titleFor } from "../svg.js";
import { seriesColor } from "../palette.js";

const TAU = 2 * Math.PI;

/** Three-ring hierarchy: stressors, their locations, and time-of-day blocks. */
export function renderSunburst(spec: ChartSpec): string {
  const frame = { ...DEFAULT_FRAME, height: 420 };
  const tree = spec.series[0]?.points ?? [];
  const total = tree.reduce((sum, n) => sum + (n.value ?? 0), 0);
  if (total <= 0) return svgRoot(frame, spec.title, noSlices(frame), spec.chart_id);

  const cx = frame.width / 2;
  const cy = 230;
  const rings: Array<[number, number]> = [
    [40, 95],
    [97, 140],
    [142, 175],
  ];
  let body = "";
  let angle = 0;
  tree.forEach((node, i) => {
    const span = ((node.value ?? 0) / total) * TAU;
    body += segment(node, cx, cy, rings[0], angle, angle + span, seriesColor(i), 1);
    body += childSegments(node.children ?? [], node.value ?? 0, cx, cy, rings, angle, span, i);
    if (span > 0.3) {
      const mid = angle + span / 2;
      body += text(cx + 67 * Math.sin(mid), cy - 67 * Math.cos(mid), node.label ?? "", {
        "text-anchor": "middle",
        "font-size": 10,
      });
    }
    angle += span;
  });
  return svgRoot(frame, spec.title, body, spec.chart_id);
}

function childSegments(
  children: ChartPoint[],
  parentValue: number,
  cx: number,
  cy: number,
  rings: Array<[number, number]>,
  start: number,
  span: number,
  colorIndex: number,
): string {
  let body = "";
  let angle = start;
  for (const child of children) {
    const childSpan = parentValue > 0 ? ((child.value ?? 0) / parentValue) * span : 0;
    body += segment(child, cx, cy, rings[1], angle, angle + childSpan, seriesColor(colorIndex), 0.75);
    let blockAngle = angle;
    for (const block of child.children ?? []) {
      const blockSpan = (child.value ?? 0) > 0 ? ((block.value ?? 0) / (child.value ?? 1)) * childSpan : 0;
      body += segment(block, cx, cy, rings[2], blockAngle, blockAngle + blockSpan, seriesColor(colorIndex), 0.5);
      blockAngle += blockSpan;
    }
    angle += childSpan;
  }
  return body;
}

function segment(
  node: ChartPoint,
  cx: number,
  cy: number,
  ring: [number, number],
  a0: number,
  a1: number,
  color: string,
  opacity: number,
): string {
  if (a1 - a0 <= 1e-9) return "";
  return el(
    "path",
    {
      d: arcPath(cx, cy, ring[0], ring[1], a0, Math.min(a1, a0 + TAU - 1e-9)),
      fill: color,
      "fill-opacity": opacity,
      stroke: "#fff",
      "stroke-width": 1,
      class: "sunburst-segment",
      ...detailAttrs({ value: node.value, ...(node.detail ?? {}) }),
    },
    titleFor(node.detail, `${node.label ?? ""}: ${node.value ?? 0} stressed minutes`),
  );
}

function noSlices(frame: { width: number; height: number }): string {
  return text(frame.width / 2, frame.height / 2, "no data yet", {
    "text-anchor": "middle",
    fill: "#777",
    class: "no-data",
  });
}
