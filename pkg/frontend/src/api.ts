/** Typed client for the logiclab HTTP service.
 *
 * Every endpoint is POST with a JSON body and responds with the envelope
 * {ok: true, result} or {ok: false, error}. Negative verdicts (not
 * equivalent, unsat, step rejected) are results; only 4xx envelopes
 * become ApiError.
 */

export type Logic = "prop" | "fol";
export type EquivMethod = "tt" | "sat" | "finite";
export type Direction = "L->R" | "R->L";

export interface AstNode {
  node:
    | "atom"
    | "true"
    | "false"
    | "not"
    | "and"
    | "or"
    | "implies"
    | "iff"
    | "pred"
    | "forall"
    | "exists";
  name?: string;
  args?: string[];
  child?: AstNode;
  left?: AstNode;
  right?: AstNode;
  var?: string;
  sort?: string;
  body?: AstNode;
}

export interface ParseResult {
  logic: Logic;
  text: string;
  ast: AstNode;
  free_variables?: { name: string; sort: string }[];
}

export interface TruthTableResult {
  atoms: string[];
  rows: boolean[];
}

export type Witness =
  | { kind: "assignment"; values: Record<string, boolean> }
  | { kind: "model"; sizes: Record<string, number>; tables: Record<string, number[][]> }
  | null;

export interface EquivResult {
  equivalent: boolean;
  method: EquivMethod;
  bounded: boolean;
  witness: Witness;
}

export interface DeriveStep {
  rule: string;
  path: number[];
  dir: Direction;
  after: string;
}

export type DeriveResult =
  | {
      equivalent: true;
      semantic_bridge: boolean;
      start: string;
      steps: DeriveStep[];
      end: string;
    }
  | { equivalent: false; witness: Witness };

export type StepVerdict =
  | {
      accepted: true;
      rule: string;
      path: number[];
      dir: Direction;
      semantic: boolean;
    }
  | { accepted: false; reason: string; witness: Witness };

export interface RuleInfo {
  id: string;
  lhs: string;
  rhs: string;
}

export type ClueRef = [string, string];

export type Clue =
  | { kind: "Same" | "ImmediatelyLeftOf" | "NextTo" | "LeftOf"; a: ClueRef; b: ClueRef }
  | { kind: "PositionIs"; a: ClueRef; index: number };

export interface PuzzleSpec {
  positions: number;
  categories: { name: string; values: string[] }[];
  clues: Clue[];
}

export type Solution = Record<string, string[]>;

export interface GridJson {
  /** candidates[position][categoryIndex] = still-possible values */
  candidates: string[][][];
}

export interface TraceEntry {
  rule: "direct" | "exclude" | "place";
  clue: Clue | null;
  cell: [number, string];
  eliminated: string[];
  reason: string;
}

export interface PropagateResult {
  grid: GridJson;
  trace: TraceEntry[];
}

export interface ApiErrorBody {
  code: string;
  message: string;
  position?: { offset: number; line: number; column: number };
  cell?: [number, string];
}

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly body: ApiErrorBody
  ) {
    super(`${body.code}: ${body.message}`);
  }
}

export class LogiclabClient {
  constructor(private readonly baseUrl: string) {}

  private async post<T>(path: string, body: unknown): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    const payload = await response.json();
    if (!payload.ok) {
      throw new ApiError(response.status, payload.error as ApiErrorBody);
    }
    return payload.result as T;
  }

  parse(logic: Logic, text: string): Promise<ParseResult> {
    return this.post("/api/parse", { logic, text });
  }

  truthTable(text: string): Promise<TruthTableResult> {
    return this.post("/api/truth-table", { text });
  }

  equiv(
    f1: string,
    f2: string,
    method: EquivMethod = "tt",
    maxSize?: number
  ): Promise<EquivResult> {
    const body: Record<string, unknown> = { f1, f2, method };
    if (maxSize !== undefined) {
      body.max_size = maxSize;
    }
    return this.post("/api/equiv", body);
  }

  derive(f1: string, f2: string): Promise<DeriveResult> {
    return this.post("/api/derive", { f1, f2 });
  }

  validateStep(
    before: string,
    after: string,
    claim?: { rule: string; path: number[]; dir: Direction }
  ): Promise<StepVerdict> {
    const body: Record<string, unknown> = { before, after };
    if (claim) {
      body.rule = claim.rule;
      body.path = claim.path;
      body.dir = claim.dir;
    }
    return this.post("/api/step/validate", body);
  }

  async rules(): Promise<RuleInfo[]> {
    const result = await this.post<{ rules: RuleInfo[] }>("/api/rules", {});
    return result.rules;
  }

  puzzleSolve(
    spec: PuzzleSpec
  ): Promise<{ status: "sat"; solution: Solution } | { status: "unsat" }> {
    return this.post("/api/puzzle/solve", { spec });
  }

  puzzleUnique(spec: PuzzleSpec): Promise<{
    status: "unique" | "multiple" | "unsat";
    solution?: Solution;
    second?: Solution;
  }> {
    return this.post("/api/puzzle/unique", { spec });
  }

  puzzlePropagate(spec: PuzzleSpec, grid?: GridJson): Promise<PropagateResult> {
    const body: Record<string, unknown> = { spec };
    if (grid) {
      body.grid = grid;
    }
    return this.post("/api/puzzle/propagate", body);
  }
}
