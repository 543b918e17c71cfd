/** Client-side puzzle board state machine.
 *
 * All state lives here: the service is stateless and each propagation
 * request sends the current grid with the spec, receiving (grid', trace).
 * Placements are local candidate restrictions; undo restores snapshots.
 */

import {
  ApiError,
  type GridJson,
  type LogiclabClient,
  type PuzzleSpec,
  type TraceEntry,
} from "./api";

export interface BoardEvent {
  kind: "place" | "propagate";
  trace: TraceEntry[];
}

export interface ContradictionInfo {
  cell: [number, string];
  message: string;
}

const MAX_UNDO = 100;

export function fullGrid(spec: PuzzleSpec): GridJson {
  return {
    candidates: Array.from({ length: spec.positions }, () =>
      spec.categories.map((category) => [...category.values])
    ),
  };
}

function cloneGrid(grid: GridJson): GridJson {
  return { candidates: grid.candidates.map((row) => row.map((cell) => [...cell])) };
}

export class BoardSession {
  private grid: GridJson;
  private undoStack: GridJson[] = [];
  private events: BoardEvent[] = [];
  private inFlight = false;
  contradiction: ContradictionInfo | null = null;

  constructor(
    private readonly client: LogiclabClient,
    public readonly spec: PuzzleSpec
  ) {
    this.grid = fullGrid(spec);
  }

  get busy(): boolean {
    return this.inFlight;
  }

  get log(): readonly BoardEvent[] {
    return this.events;
  }

  candidates(position: number, category: string): string[] {
    const ci = this.categoryIndex(category);
    return [...(this.grid.candidates[position]?.[ci] ?? [])];
  }

  snapshot(): GridJson {
    return cloneGrid(this.grid);
  }

  /** Pin a cell to a single value (a user fact, e.g. Norwegian in house 0).
   * Purely client-side; the next propagate call lets the service react. */
  place(position: number, category: string, value: string): void {
    const ci = this.categoryIndex(category);
    const cell = this.grid.candidates[position]?.[ci];
    if (!cell || !cell.includes(value)) {
      throw new Error(`${value} is not a candidate at house ${position}`);
    }
    this.pushUndo();
    const eliminated = cell.filter((v) => v !== value);
    this.grid.candidates[position]![ci] = [value];
    this.events.push({
      kind: "place",
      trace: [
        {
          rule: "place",
          clue: null,
          cell: [position, category],
          eliminated,
          reason: `${value} placed by hand at house ${position}`,
        },
      ],
    });
  }

  /** One propagation round on the service. A contradiction response
   * marks the offending cell and leaves the grid for the user to undo. */
  async propagate(): Promise<TraceEntry[]> {
    if (this.inFlight) {
      throw new Error("a propagation request is already running");
    }
    this.inFlight = true;
    try {
      const result = await this.client.puzzlePropagate(this.spec, this.grid);
      this.pushUndo();
      this.grid = result.grid;
      this.contradiction = null;
      this.events.push({ kind: "propagate", trace: result.trace });
      return result.trace;
    } catch (error) {
      if (error instanceof ApiError && error.body.code === "contradiction") {
        this.contradiction = {
          cell: error.body.cell ?? [0, ""],
          message: error.body.message,
        };
      }
      throw error;
    } finally {
      this.inFlight = false;
    }
  }

  /** Run propagation rounds until the trace comes back empty. */
  async propagateToFixpoint(maxRounds = 50): Promise<TraceEntry[]> {
    const all: TraceEntry[] = [];
    for (let round = 0; round < maxRounds; round++) {
      const trace = await this.propagate();
      if (trace.length === 0) {
        break;
      }
      all.push(...trace);
    }
    return all;
  }

  undo(): boolean {
    const prev = this.undoStack.pop();
    if (!prev || this.inFlight) {
      return false;
    }
    this.grid = prev;
    this.events.pop();
    this.contradiction = null;
    return true;
  }

  /** Replay the event log from a fresh grid; placements re-apply locally
   * and propagations re-run against the service. The end grid must match
   * because the service is deterministic. */
  async replay(): Promise<BoardSession> {
    const fresh = new BoardSession(this.client, this.spec);
    for (const event of this.events) {
      if (event.kind === "place") {
        const entry = event.trace[0]!;
        const [position, category] = entry.cell;
        const value = fresh
          .candidates(position, category)
          .find((v) => !entry.eliminated.includes(v));
        if (value === undefined) {
          throw new Error("replay lost the placed value");
        }
        fresh.place(position, category, value);
      } else {
        await fresh.propagate();
      }
    }
    return fresh;
  }

  private pushUndo(): void {
    this.undoStack.push(cloneGrid(this.grid));
    if (this.undoStack.length > MAX_UNDO) {
      this.undoStack.shift();
    }
  }

  private categoryIndex(category: string): number {
    const index = this.spec.categories.findIndex((c) => c.name === category);
    if (index < 0) {
      throw new Error(`unknown category ${category}`);
    }
    return index;
  }
}
