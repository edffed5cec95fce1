/** Boots the real gateway (python) once for the whole vitest run. */

import { spawn, type ChildProcess } from "node:child_process";
import { fileURLToPath } from "node:url";
import { dirname, join } from "node:path";

const PORT = 8901;
const BASE_URL = `http://127.0.0.1:${PORT}`;

let server: ChildProcess | null = null;

export async function setup(): Promise<void> {
  const here = dirname(fileURLToPath(import.meta.url));
  server = spawn("python3", [join(here, "server.py"), String(PORT)], {
    stdio: ["ignore", "inherit", "inherit"],
  });
  const deadline = Date.now() + 30000;
  while (Date.now() < deadline) {
    try {
      const response = await fetch(`${BASE_URL}/v1/prompts/pending?participant_id=webtest`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((r) => setTimeout(r, 250));
  }
  throw new Error("test gateway did not come up on " + BASE_URL);
}

export async function teardown(): Promise<void> {
  if (server) {
    server.kill("SIGTERM");
    server = null;
  }
}
