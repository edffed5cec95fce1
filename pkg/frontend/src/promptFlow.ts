/**
 * The prompt response flow: Likert rating first; when the rating owes a
 * stressor, a follow-up screen shows the event context (date, time,
 * duration, score, map point) with live autocomplete for the stressor text
 * and a semantic-location field.
 */

import { ApiClient, newRequestId } from "./api.js";
import {
  PromptTicket,
  RATING_LABELS,
  RatingResponse,
  StressorTaskContext,
  requiresStressor,
} from "./types.js";

export type FlowStage = "idle" | "rating" | "stressor" | "done";

export interface FlowView {
  stage: FlowStage;
  ticket: PromptTicket | null;
  ratingOptions: readonly string[];
  chosenRating: number | null;
  task: StressorTaskContext | null;
  suggestions: string[];
}

export class PromptFlow {
  private view: FlowView = {
    stage: "idle",
    ticket: null,
    ratingOptions: RATING_LABELS,
    chosenRating: null,
    task: null,
    suggestions: [],
  };
  private debounceTimer: ReturnType<typeof setTimeout> | null = null;
  private ratingRequestId = newRequestId();
  private annotationRequestId = newRequestId();

  constructor(
    private api: ApiClient,
    private options: { debounceMs?: number; onChange?: (view: FlowView) => void } = {},
  ) {}

  state(): FlowView {
    return { ...this.view, suggestions: [...this.view.suggestions] };
  }

  private update(patch: Partial<FlowView>): void {
    this.view = { ...this.view, ...patch };
    this.options.onChange?.(this.state());
  }

  start(ticket: PromptTicket): FlowView {
    this.ratingRequestId = newRequestId();
    this.annotationRequestId = newRequestId();
    this.update({ stage: "rating", ticket, chosenRating: null, task: null, suggestions: [] });
    return this.state();
  }

  /** Submit the Likert choice; advances to the stressor screen when owed. */
  async chooseRating(rating: number, gps?: [number, number]): Promise<FlowView> {
    if (this.view.stage !== "rating" || !this.view.ticket) {
      throw new Error("no prompt is awaiting a rating");
    }
    if (!Number.isInteger(rating) || rating < 0 || rating > 4) {
      throw new Error(`rating must be an integer 0..4, got ${rating}`);
    }
    const response: RatingResponse = await this.api.submitRating(
      this.view.ticket.event_id,
      rating,
      this.ratingRequestId,
      gps,
    );
    if (requiresStressor(rating) && response.stressor_task) {
      this.update({ stage: "stressor", chosenRating: rating, task: response.stressor_task });
    } else {
      this.update({ stage: "done", chosenRating: rating, task: null });
    }
    return this.state();
  }

  /** Debounced typeahead against the lexicon. */
  queryStressor(text: string): Promise<string[]> {
    if (this.debounceTimer) clearTimeout(this.debounceTimer);
    const wait = this.options.debounceMs ?? 200;
    return new Promise((resolve) => {
      this.debounceTimer = setTimeout(async () => {
        if (!text.trim()) {
          this.update({ suggestions: [] });
          resolve([]);
          return;
        }
        const { suggestions } = await this.api.autocomplete(text, 8);
        this.update({ suggestions });
        resolve(suggestions);
      }, wait);
    });
  }

  /** Complete the stressor annotation and finish the flow. */
  async submitStressor(stressorText: string, semanticLocation: string | null): Promise<FlowView> {
    if (this.view.stage !== "stressor" || !this.view.ticket) {
      throw new Error("no stressor task is open");
    }
    if (!stressorText.trim()) {
      throw new Error("stressor text is required");
    }
    await this.api.completeAnnotation(
      this.view.ticket.event_id,
      stressorText,
      semanticLocation,
      this.annotationRequestId,
    );
    this.update({ stage: "done", suggestions: [] });
    return this.state();
  }
}

/** Event context block shown on the stressor screen. */
export function describeTask(task: StressorTaskContext): string[] {
  const lines = [
    `date: ${task.date}`,
    `start: ${task.start_time}`,
    `duration: ${task.duration_min} min`,
    `stress likelihood: ${task.score}`,
  ];
  if (task.gps) lines.push(`location: ${task.gps[0].toFixed(4)}, ${task.gps[1].toFixed(4)}`);
  return lines;
}
