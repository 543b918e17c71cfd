/** Client-side proof session state machine.
 *
 * Holds a chain of formulas starting from `start`; every extension goes
 * through POST /api/step/validate, so the invariant is: each accepted
 * step was validated by the service. Undo pops locally. Sessions export
 * to JSON and replay against a fresh service.
 */

import type { Direction, LogiclabClient, StepVerdict } from "./api";

export interface AcceptedStep {
  after: string;
  rule: string;
  path: number[];
  dir: Direction;
  semantic: boolean;
}

export interface ProofExport {
  version: 1;
  start: string;
  steps: AcceptedStep[];
}

export class ProofSession {
  private steps: AcceptedStep[] = [];
  private inFlight = false;

  constructor(
    private readonly client: LogiclabClient,
    public readonly start: string
  ) {}

  get current(): string {
    const last = this.steps[this.steps.length - 1];
    return last ? last.after : this.start;
  }

  get history(): readonly AcceptedStep[] {
    return this.steps;
  }

  get busy(): boolean {
    return this.inFlight;
  }

  /** Guided step: the user picked a rule, a path and a direction. */
  async submitStep(
    after: string,
    claim: { rule: string; path: number[]; dir: Direction }
  ): Promise<StepVerdict> {
    return this.validateAndPush(after, claim);
  }

  /** Free edit: the user typed the next formula; the service searches
   * the catalog and falls back to a flagged semantic check. */
  async freeEdit(after: string): Promise<StepVerdict> {
    return this.validateAndPush(after, undefined);
  }

  private async validateAndPush(
    after: string,
    claim?: { rule: string; path: number[]; dir: Direction }
  ): Promise<StepVerdict> {
    if (this.inFlight) {
      throw new Error("a step is already being validated");
    }
    this.inFlight = true;
    try {
      const verdict = await this.client.validateStep(this.current, after, claim);
      if (verdict.accepted) {
        this.steps.push({
          after,
          rule: verdict.rule,
          path: verdict.path,
          dir: verdict.dir,
          semantic: verdict.semantic,
        });
      }
      return verdict;
    } finally {
      this.inFlight = false;
    }
  }

  /** Drop the last accepted step; returns false at the start. */
  undo(): boolean {
    if (this.inFlight || this.steps.length === 0) {
      return false;
    }
    this.steps.pop();
    return true;
  }

  toJSON(): ProofExport {
    return { version: 1, start: this.start, steps: [...this.steps] };
  }

  /** Re-submit an exported session step by step against a service.
   * Throws if any previously-accepted step is rejected. */
  static async replay(
    client: LogiclabClient,
    data: ProofExport
  ): Promise<ProofSession> {
    const session = new ProofSession(client, data.start);
    for (const step of data.steps) {
      // semantic acceptances have no catalog rule to claim; re-validate
      // them the same way they were accepted, via search + fallback
      const verdict = step.semantic
        ? await session.freeEdit(step.after)
        : await session.submitStep(step.after, {
            rule: step.rule,
            path: step.path,
            dir: step.dir,
          });
      if (!verdict.accepted) {
        throw new Error(
          `replay rejected step to ${step.after}: ${verdict.reason}`
        );
      }
    }
    return session;
  }
}
