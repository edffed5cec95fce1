/**
 * Wire types mirroring the chart-spec schema and API payloads.
 *
 * The client never recomputes statistics: everything rendered comes from
 * these documents as served.
 */

export interface ChartPoint {
  x?: number | string;
  y?: number | string;
  value?: number;
  size?: number;
  weight?: number;
  label?: string;
  detail?: Record<string, unknown>;
  no_data?: boolean;
  current_week?: boolean;
  children?: ChartPoint[];
  new_this_week?: boolean;
}

export interface BoxSummary {
  q1: number;
  median: number;
  q3: number;
  whisker_low: number;
  whisker_high: number;
}

export interface ChartSeries {
  label: string;
  detail?: Record<string, unknown>;
  points?: ChartPoint[];
  box?: BoxSummary;
  density?: { x: number[]; y: number[] };
}

export interface ChartSpec {
  schema_version: number;
  chart_id: string;
  week_index: number;
  title: string;
  kind: string;
  series: ChartSeries[];
  axes: Record<string, unknown>;
  legend: { items?: Array<{ label: string; new_this_week?: boolean }>; toggleable?: boolean };
  color_scale: { palette: string; domain?: [number, number] };
  flags: Record<string, unknown>;
  interactive: boolean;
}

export interface EventRecord {
  event_id: string;
  participant_id: string;
  start: number;
  end: number;
  score: number;
  tz_offset_min: number;
}

export interface AnnotationRecord {
  event_id: string;
  participant_id: string;
  rating: number;
  stressor_text: string | null;
  semantic_location: string | null;
  gps: [number, number] | null;
  is_private: boolean;
  is_manual: boolean;
  created_at: number;
  edited_at: number | null;
  entry_duration_s: number | null;
}

export interface PromptTicket {
  ticket_id: string;
  event_id: string;
  participant_id: string;
  issued_at: number;
  expires_at: number;
  responded: boolean;
  event?: EventRecord;
}

export interface StressorTaskContext {
  event_id: string;
  date: string;
  start_time: string;
  duration_min: number;
  score: number;
  gps: [number, number] | null;
}

export interface RatingResponse {
  annotation: AnnotationRecord;
  stressor_task: StressorTaskContext | null;
}

export interface SurveyInstance {
  participant_id: string;
  week_index: number;
  opened_at: number;
  due_at: number;
  closes_at: number;
  frequency_options: string[];
  impact_options: string[];
  recall_scale: [number, number];
}

export interface BundleResponse {
  manifest: { participant_id: string; week_index: number; charts: Array<{ chart_id: string; file: string }> };
  charts: ChartSpec[];
}

/** Likert labels in rating order 0..4. */
export const RATING_LABELS = [
  "Not stressed",
  "Probably not stressed",
  "Unsure",
  "Probably stressed",
  "Stressed",
] as const;

/** Ratings of Unsure or above owe a stressor annotation. */
export function requiresStressor(rating: number): boolean {
  return rating >= 2;
}
