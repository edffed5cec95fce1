/** Color scales. Categorical colors follow the Okabe-Ito color-blind-safe set. */

export const OKABE_ITO = [
  "#E69F00",
  "#56B4E9",
  "#009E73",
  "#F0E442",
  "#0072B2",
  "#D55E00",
  "#CC79A7",
  "#999999",
] as const;

export function seriesColor(index: number): string {
  return OKABE_ITO[index % OKABE_ITO.length];
}

/** Viridis-like sequential ramp for value-encoded cells (score 0..100). */
const SEQUENTIAL_STOPS: Array<[number, [number, number, number]]> = [
  [0.0, [68, 1, 84]],
  [0.25, [59, 82, 139]],
  [0.5, [33, 145, 140]],
  [0.75, [94, 201, 98]],
  [1.0, [253, 231, 37]],
];

export function sequentialColor(value: number, domain: [number, number] = [0, 100]): string {
  const [lo, hi] = domain;
  const t = Math.max(0, Math.min(1, (value - lo) / (hi - lo || 1)));
  for (let i = 1; i < SEQUENTIAL_STOPS.length; i++) {
    const [t1, c1] = SEQUENTIAL_STOPS[i];
    if (t <= t1) {
      const [t0, c0] = SEQUENTIAL_STOPS[i - 1];
      const f = (t - t0) / (t1 - t0 || 1);
      const mix = c0.map((c, k) => Math.round(c + f * (c1[k] - c)));
      return `rgb(${mix[0]},${mix[1]},${mix[2]})`;
    }
  }
  return "rgb(253,231,37)";
}
