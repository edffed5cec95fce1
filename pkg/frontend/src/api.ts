/**
 * Typed client for the platform gateway.
 *
 * Every mutation carries a client-generated request id so retries (manual
 * or from the offline queue) are idempotent server-side.
 */

import type {
  AnnotationRecord,
  BundleResponse,
  PromptTicket,
  RatingResponse,
  SurveyInstance,
} from "./types.js";

export interface ApiOptions {
  participantId?: string;
  token?: string;
  fetchFn?: typeof fetch;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
  }
}

export function newRequestId(): string {
  return globalThis.crypto?.randomUUID?.() ?? `req-${Date.now()}-${Math.random().toString(36).slice(2)}`;
}

export class ApiClient {
  private fetchFn: typeof fetch;

  constructor(
    public baseUrl: string,
    private options: ApiOptions = {},
  ) {
    this.fetchFn = options.fetchFn ?? fetch.bind(globalThis);
  }

  private headers(): Record<string, string> {
    const headers: Record<string, string> = { "content-type": "application/json" };
    if (this.options.token) headers["authorization"] = `Bearer ${this.options.token}`;
    return headers;
  }

  private withParticipant(params: URLSearchParams): URLSearchParams {
    if (!this.options.token && this.options.participantId) {
      params.set("participant_id", this.options.participantId);
    }
    return params;
  }

  private async request<T>(method: string, path: string, body?: unknown, params?: URLSearchParams): Promise<T> {
    const query = params && [...params.keys()].length > 0 ? `?${params.toString()}` : "";
    const response = await this.fetchFn(`${this.baseUrl}${path}${query}`, {
      method,
      headers: this.headers(),
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await response.json().catch(() => ({}));
    if (!response.ok) {
      const err = (payload ?? {}) as { code?: string; message?: string };
      throw new ApiError(response.status, err.code ?? "error", err.message ?? response.statusText);
    }
    return payload as T;
  }

  ingestEvents(events: object[]): Promise<{ results: Array<{ event_id: string; status: string; ticket_id: string | null }> }> {
    return this.request("POST", "/v1/events", { events });
  }

  pendingPrompts(): Promise<{ prompts: PromptTicket[] }> {
    return this.request("GET", "/v1/prompts/pending", undefined, this.withParticipant(new URLSearchParams()));
  }

  submitRating(eventId: string, rating: number, requestId: string, gps?: [number, number]): Promise<RatingResponse> {
    return this.request("POST", "/v1/ratings", {
      request_id: requestId,
      event_id: eventId,
      rating,
      gps,
    });
  }

  autocomplete(query: string, limit = 8): Promise<{ query: string; suggestions: string[] }> {
    const params = this.withParticipant(new URLSearchParams({ q: query, limit: String(limit) }));
    return this.request("GET", "/v1/autocomplete", undefined, params);
  }

  completeAnnotation(
    eventId: string,
    stressorText: string,
    semanticLocation: string | null,
    requestId: string,
  ): Promise<{ annotation: AnnotationRecord }> {
    return this.request("POST", "/v1/annotations", {
      request_id: requestId,
      event_id: eventId,
      stressor_text: stressorText,
      semantic_location: semanticLocation,
    });
  }

  editAnnotation(eventId: string, patch: Record<string, unknown>, requestId: string): Promise<{ annotation: AnnotationRecord }> {
    return this.request("PATCH", `/v1/annotations/${eventId}`, { request_id: requestId, ...patch });
  }

  manualReport(body: {
    rating: number;
    stressor_text: string;
    semantic_location?: string | null;
    at: number;
    tz_offset_min?: number;
  }, requestId: string): Promise<{ annotation: AnnotationRecord }> {
    return this.request("POST", "/v1/annotations/manual", {
      request_id: requestId,
      participant_id: this.options.participantId,
      ...body,
    });
  }

  dashboard(): Promise<{ timeline: Array<{ event: Record<string, unknown>; annotation: AnnotationRecord }> }> {
    return this.request("GET", "/v1/dashboard", undefined, this.withParticipant(new URLSearchParams()));
  }

  visualizations(week: number): Promise<BundleResponse> {
    return this.request("GET", `/v1/visualizations/${week}`, undefined, this.withParticipant(new URLSearchParams()));
  }

  currentSurvey(): Promise<{ survey: SurveyInstance | null }> {
    return this.request("GET", "/v1/surveys/current", undefined, this.withParticipant(new URLSearchParams()));
  }

  submitSurvey(body: {
    week_index: number;
    frequency_choice: string;
    recall_ease: number;
    viz_impacts: string[];
  }, requestId: string): Promise<Record<string, unknown>> {
    return this.request("POST", "/v1/surveys", {
      request_id: requestId,
      participant_id: this.options.participantId,
      ...body,
    });
  }
}
