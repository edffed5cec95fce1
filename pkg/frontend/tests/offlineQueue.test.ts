import { describe, expect, it } from "vitest";

import { OfflineQueue } from "../src/offlineQueue.js";
import { ApiError } from "../src/api.js";

function networkFailure(): never {
  throw new TypeError("fetch failed");
}

describe("offline queue", () => {
  it("parks network failures and replays them with the same request id", async () => {
    const queue = new OfflineQueue();
    const seen: string[] = [];
    let online = false;
    const mutation = {
      requestId: "req-123",
      description: "submit rating",
      run: async () => {
        if (!online) networkFailure();
        seen.push("req-123");
        return { ok: true };
      },
    };
    const first = await queue.submit(mutation);
    expect(first.delivered).toBe(false);
    expect(queue.pendingIds()).toEqual(["req-123"]);

    online = true;
    const flushed = await queue.flush();
    expect(flushed).toBe(1);
    expect(seen).toEqual(["req-123"]);
    expect(queue.size).toBe(0);
  });

  it("stops flushing at the first network failure, preserving order", async () => {
    const queue = new OfflineQueue();
    let callCount = 0;
    for (const id of ["a", "b"]) {
      await queue.submit({
        requestId: id,
        description: id,
        run: async () => {
          callCount += 1;
          networkFailure();
        },
      });
    }
    expect(queue.size).toBe(2);
    await queue.flush();
    expect(queue.pendingIds()).toEqual(["a", "b"]); // nothing delivered, order kept
    expect(callCount).toBe(3); // two submits + one flush attempt on "a"
  });

  it("surfaces server rejections instead of retry-looping", async () => {
    const queue = new OfflineQueue();
    const result = queue.submit({
      requestId: "bad",
      description: "invalid",
      run: async () => {
        throw new ApiError(400, "validation", "nope");
      },
    });
    await expect(result).rejects.toThrow("nope");
    expect(queue.size).toBe(0);
  });
});
