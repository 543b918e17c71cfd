/** Spawns a real logiclab service for end-to-end tests. */

import { type ChildProcess, spawn } from "node:child_process";

export interface LiveServer {
  url: string;
  stop: () => void;
}

export async function startServer(port = 8131): Promise<LiveServer> {
  const child: ChildProcess = spawn(
    "python3",
    ["-m", "logiclab", "serve", "--port", String(port)],
    { stdio: "ignore" }
  );
  const url = `http://127.0.0.1:${port}`;
  const deadline = Date.now() + 15000;
  for (;;) {
    try {
      const response = await fetch(`${url}/api/rules`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: "{}",
      });
      if (response.ok) {
        break;
      }
    } catch {
      // not up yet
    }
    if (Date.now() > deadline) {
      child.kill();
      throw new Error("logiclab service did not start within 15s");
    }
    await new Promise((resolve) => setTimeout(resolve, 150));
  }
  return { url, stop: () => child.kill() };
}
