/**
 * Dashboard timeline: every logged event with its rating and stressor,
 * newest first, with edit affordances (rating, stressor text, privacy).
 */

import type { AnnotationRecord } from "./types.js";
import { RATING_LABELS } from "./types.js";
import { escapeXml } from "./svg.js";

export interface TimelineRow {
  event: { event_id: string; start: number; end: number; score: number; tz_offset_min: number };
  annotation: AnnotationRecord;
}

export function renderTimeline(rows: TimelineRow[]): string {
  if (rows.length === 0) {
    return `<div class="timeline empty">no logged events yet</div>`;
  }
  const items = [...rows]
    .sort((a, b) => b.event.start - a.event.start)
    .map((row) => renderRow(row))
    .join("");
  return `<ul class="timeline">${items}</ul>`;
}

function renderRow(row: TimelineRow): string {
  const { event, annotation } = row;
  const local = new Date((event.start + event.tz_offset_min * 60) * 1000);
  const when = local.toISOString().replace("T", " ").slice(0, 16);
  const rating = RATING_LABELS[annotation.rating] ?? String(annotation.rating);
  const stressor = annotation.stressor_text ? escapeXml(annotation.stressor_text) : "<em>no stressor</em>";
  const location = annotation.semantic_location ? ` @ ${escapeXml(annotation.semantic_location)}` : "";
  const badges = [
    annotation.is_manual ? `<span class="badge manual">manual</span>` : "",
    annotation.is_private ? `<span class="badge private">private</span>` : "",
  ].join("");
  return (
    `<li class="timeline-row" data-event-id="${escapeXml(event.event_id)}">` +
    `<span class="when">${when}</span>` +
    `<span class="rating">${escapeXml(rating)}</span>` +
    `<span class="stressor">${stressor}${location}</span>` +
    badges +
    `<button class="edit" data-action="edit" data-event-id="${escapeXml(event.event_id)}">edit</button>` +
    `</li>`
  );
}
