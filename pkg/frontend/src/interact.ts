/**
 * Interactivity over rendered charts: legend series toggles and tap/hover
 * detail reveal. Toggle state is pure data so it can be tested headlessly;
 * `attachInteractivity` wires it to a live DOM container.
 */

export interface ToggleState {
  hidden: Set<string>;
}

export function createToggleState(): ToggleState {
  return { hidden: new Set() };
}

export function toggleSeries(state: ToggleState, label: string): ToggleState {
  const hidden = new Set(state.hidden);
  if (hidden.has(label)) hidden.delete(label);
  else hidden.add(label);
  return { hidden };
}

export function isVisible(state: ToggleState, label: string): boolean {
  return !state.hidden.has(label);
}

/** Apply a toggle state to chart markup headlessly (string transform). */
export function applyToggles(svg: string, state: ToggleState): string {
  let out = svg;
  for (const label of state.hidden) {
    const escaped = label.replace(/[.*+?^${}()|[\]\\]/g, "\\$&");
    out = out.replace(
      new RegExp(`<g class="series" data-series="${escaped}">`, "g"),
      `<g class="series hidden" data-series="${escaped}" display="none">`,
    );
  }
  return out;
}

/** Human-readable lines for a detail payload; full text always first. */
export function describeDetail(detail: Record<string, unknown>): string[] {
  const lines: string[] = [];
  if (typeof detail["full_text"] === "string") {
    lines.push(String(detail["full_text"]));
  }
  for (const [key, value] of Object.entries(detail)) {
    if (key === "full_text" || value === null || value === undefined) continue;
    if (Array.isArray(value)) {
      lines.push(`${key.replaceAll("_", " ")}: ${value.join(", ")}`);
    } else {
      lines.push(`${key.replaceAll("_", " ")}: ${value}`);
    }
  }
  return lines;
}

/** Wire legend toggles and detail taps inside a container element. */
export function attachInteractivity(container: HTMLElement, onDetail?: (lines: string[]) => void): void {
  let state = createToggleState();
  container.addEventListener("click", (event) => {
    const target = event.target as HTMLElement | null;
    if (!target) return;
    const seriesLabel = target.getAttribute("data-series");
    if (seriesLabel && target.classList.contains("toggleable")) {
      state = toggleSeries(state, seriesLabel);
      container.querySelectorAll<SVGGElement>("g.series").forEach((group) => {
        const label = group.getAttribute("data-series") ?? "";
        group.style.display = isVisible(state, label) ? "" : "none";
      });
      return;
    }
    const payload = target.closest("[data-detail]")?.getAttribute("data-detail");
    if (payload) {
      const lines = describeDetail(JSON.parse(payload) as Record<string, unknown>);
      if (onDetail) onDetail(lines);
    }
  });
}
