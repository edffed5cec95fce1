/**
 * Offline mutation queue: submissions that fail with a network error are
 * kept (request id and all) and replayed in order; server-side idempotency
 * makes the retries safe.
 */

export interface QueuedMutation {
  requestId: string;
  run: () => Promise<unknown>;
  description: string;
}

export class OfflineQueue {
  private queue: QueuedMutation[] = [];

  get size(): number {
    return this.queue.length;
  }

  pendingIds(): string[] {
    return this.queue.map((m) => m.requestId);
  }

  /** Run a mutation now; on network failure, park it for a later flush. */
  async submit(mutation: QueuedMutation): Promise<{ delivered: boolean; result?: unknown }> {
    try {
      const result = await mutation.run();
      return { delivered: true, result };
    } catch (error) {
      if (isNetworkError(error)) {
        this.queue.push(mutation);
        return { delivered: false };
      }
      throw error; // validation/conflict errors surface immediately
    }
  }

  /** Replay parked mutations in order; stops at the first network failure. */
  async flush(): Promise<number> {
    let delivered = 0;
    while (this.queue.length > 0) {
      const next = this.queue[0];
      try {
        await next.run();
      } catch (error) {
        if (isNetworkError(error)) return delivered;
        // the server rejected it outright; drop it rather than loop forever
        this.queue.shift();
        throw error;
      }
      this.queue.shift();
      delivered += 1;
    }
    return delivered;
  }
}

export function isNetworkError(error: unknown): boolean {
  return error instanceof TypeError || (error instanceof Error && error.name === "NetworkError");
}
