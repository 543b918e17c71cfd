import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { LogiclabClient } from "../src/api";
import { ProofSession } from "../src/proof";
import { type LiveServer, startServer } from "./server";

let server: LiveServer;
let client: LogiclabClient;

beforeAll(async () => {
  server = await startServer(8131);
  client = new LogiclabClient(server.url);
}, 20000);

afterAll(() => {
  server.stop();
});

describe("proof stepper against a live service", () => {
  it("reproduces the S1 chain as four accepted guided steps", async () => {
    const session = new ProofSession(client, "(A | B) & C -> D");

    const steps: [string, string, number[]][] = [
      ["!((A | B) & C) | D", "impl_elim", []],
      ["!(A | B) | !C | D", "de_morgan_and", [0]],
      ["(!A & !B) | !C | D", "de_morgan_or", [0, 0]],
      ["!A & !B | (!C | D)", "assoc_or", []],
    ];
    for (const [after, rule, path] of steps) {
      const verdict = await session.submitStep(after, {
        rule,
        path,
        dir: "L->R",
      });
      expect(verdict.accepted).toBe(true);
      if (verdict.accepted) {
        expect(verdict.semantic).toBe(false);
      }
    }
    expect(session.history).toHaveLength(4);
    expect(session.current).toBe("!A & !B | (!C | D)");
  });

  it("rejects a wrong step and leaves the chain unchanged", async () => {
    const session = new ProofSession(client, "A & B");
    const verdict = await session.freeEdit("A | B");
    expect(verdict.accepted).toBe(false);
    if (!verdict.accepted) {
      expect(verdict.witness).toEqual({
        kind: "assignment",
        values: { A: false, B: true },
      });
    }
    expect(session.current).toBe("A & B");
    expect(session.history).toHaveLength(0);
  });

  it("accepts a free edit via catalog search", async () => {
    const session = new ProofSession(client, "A -> B");
    const verdict = await session.freeEdit("!A | B");
    expect(verdict.accepted).toBe(true);
    if (verdict.accepted) {
      expect(verdict.rule).toBe("impl_elim");
      expect(verdict.semantic).toBe(false);
    }
  });

  it("flags a semantic free edit that no named rule covers", async () => {
    const session = new ProofSession(client, "A -> B");
    const verdict = await session.freeEdit("!B -> !A");
    expect(verdict.accepted).toBe(true);
    if (verdict.accepted) {
      expect(verdict.semantic).toBe(true);
    }
  });

  it("undo restores the prior state exactly", async () => {
    const session = new ProofSession(client, "A -> B");
    await session.freeEdit("!A | B");
    expect(session.current).toBe("!A | B");
    expect(session.undo()).toBe(true);
    expect(session.current).toBe("A -> B");
    expect(session.history).toHaveLength(0);
    expect(session.undo()).toBe(false);
  });

  it("export and replay reproduce every acceptance", async () => {
    const session = new ProofSession(client, "(A | B) & C -> D");
    await session.submitStep("!((A | B) & C) | D", {
      rule: "impl_elim",
      path: [],
      dir: "L->R",
    });
    await session.freeEdit("!(A | B) | !C | D");
    await session.freeEdit("!C | D | !(A | B)"); // one-shot reorder: semantic

    const exported = JSON.parse(JSON.stringify(session.toJSON()));
    const replayed = await ProofSession.replay(client, exported);
    expect(replayed.current).toBe(session.current);
    expect(replayed.history).toEqual(session.history);
  });

  it("guards against concurrent submissions", async () => {
    const session = new ProofSession(client, "A -> B");
    const first = session.freeEdit("!A | B");
    await expect(session.freeEdit("!A | B")).rejects.toThrow(/already/);
    await first;
  });
});
