/** Small SVG string builders shared by every chart renderer. */

export function escapeXml(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;")
    .replaceAll("'", "&#39;");
}

export function attrs(pairs: Record<string, string | number | undefined>): string {
  return Object.entries(pairs)
    .filter(([, v]) => v !== undefined)
    .map(([k, v]) => `${k}="${escapeXml(String(v))}"`)
    .join(" ");
}

export function el(tag: string, attributes: Record<string, string | number | undefined>, children = ""): string {
  const a = attrs(attributes);
  return children === "" ? `<${tag} ${a}/>` : `<${tag} ${a}>${children}</${tag}>`;
}

export function text(x: number, y: number, content: string, extra: Record<string, string | number> = {}): string {
  return el("text", { x: round2(x), y: round2(y), ...extra }, escapeXml(content));
}

/** Serialized detail payload for tap/hover, plus a readable <title>. */
export function detailAttrs(detail: Record<string, unknown> | undefined): Record<string, string> {
  if (!detail || Object.keys(detail).length === 0) return {};
  return { "data-detail": JSON.stringify(detail) };
}

export function titleFor(detail: Record<string, unknown> | undefined, fallback: string): string {
  const full = detail && typeof detail["full_text"] === "string" ? (detail["full_text"] as string) : fallback;
  return el("title", {}, escapeXml(full));
}

export function round2(v: number): number {
  return Math.round(v * 100) / 100;
}

export interface Frame {
  width: number;
  height: number;
  margin: { top: number; right: number; bottom: number; left: number };
}

export const DEFAULT_FRAME: Frame = {
  width: 640,
  height: 360,
  margin: { top: 36, right: 24, bottom: 40, left: 56 },
};

export function linearScale(domain: [number, number], range: [number, number]) {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  return (v: number) => r0 + ((v - d0) / span) * (r1 - r0);
}

export function svgRoot(frame: Frame, title: string, body: string, chartId: string): string {
  // width 100% + viewBox keeps the charts responsive across screen sizes
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${frame.width} ${frame.height}" ` +
    `width="100%" role="img" aria-label="${escapeXml(title)}" data-chart-id="${escapeXml(chartId)}">` +
    text(frame.margin.left, 20, title, { "font-size": 14, "font-weight": "bold", class: "chart-title" }) +
    body +
    `</svg>`
  );
}

/** Donut/sunburst segment path between two angles (radians, clockwise from 12 o'clock). */
export function arcPath(
  cx: number,
  cy: number,
  r0: number,
  r1: number,
  a0: number,
  a1: number,
): string {
  const pt = (r: number, a: number): [number, number] => [
    cx + r * Math.sin(a),
    cy - r * Math.cos(a),
  ];
  const large = a1 - a0 > Math.PI ? 1 : 0;
  const [x0o, y0o] = pt(r1, a0);
  const [x1o, y1o] = pt(r1, a1);
  const [x1i, y1i] = pt(r0, a1);
  const [x0i, y0i] = pt(r0, a0);
  return (
    `M ${round2(x0o)} ${round2(y0o)} ` +
    `A ${r1} ${r1} 0 ${large} 1 ${round2(x1o)} ${round2(y1o)} ` +
    `L ${round2(x1i)} ${round2(y1i)} ` +
    `A ${r0} ${r0} 0 ${large} 0 ${round2(x0i)} ${round2(y0i)} Z`
  );
}

export function emptyPlaceholder(title: string, chartId: string): string {
  const frame = DEFAULT_FRAME;
  return svgRoot(
    frame,
    title,
    text(frame.width / 2, frame.height / 2, "no data yet", {
      "text-anchor": "middle",
      "font-size": 16,
      fill: "#777",
      class: "no-data",
    }),
    chartId,
  );
}
