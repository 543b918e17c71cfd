/** Thin DOM wiring for the two pages (proof stepper, puzzle board).
 * All interesting behavior lives in the tested session modules. */

import { LogiclabClient, type PuzzleSpec, type RuleInfo } from "./api";
import { BoardSession } from "./board";
import { ProofSession } from "./proof";

const client = new LogiclabClient(
  (window as { LOGICLAB_URL?: string }).LOGICLAB_URL ?? "http://127.0.0.1:8095"
);

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

// --- page switching ---------------------------------------------------------

for (const page of ["proof", "board"]) {
  el<HTMLButtonElement>(`tab-${page}`).addEventListener("click", () => {
    el("page-proof").hidden = page !== "proof";
    el("page-board").hidden = page !== "board";
  });
}

// --- proof stepper ----------------------------------------------------------

let proof: ProofSession | null = null;
let rules: RuleInfo[] = [];

function renderProof(): void {
  const list = el<HTMLOListElement>("proof-chain");
  list.innerHTML = "";
  if (!proof) {
    return;
  }
  const first = document.createElement("li");
  first.textContent = proof.start;
  list.append(first);
  for (const step of proof.history) {
    const item = document.createElement("li");
    const tag = step.semantic ? "semantic" : `${step.rule} @ [${step.path}]`;
    item.textContent = `${step.after}    (${tag})`;
    list.append(item);
  }
}

el<HTMLButtonElement>("proof-start").addEventListener("click", async () => {
  const text = el<HTMLInputElement>("proof-formula").value;
  const parsed = await client.parse("prop", text);
  proof = new ProofSession(client, parsed.text);
  if (rules.length === 0) {
    rules = await client.rules();
    const picker = el<HTMLSelectElement>("proof-rule");
    for (const rule of rules) {
      const option = document.createElement("option");
      option.value = rule.id;
      option.textContent = `${rule.id}: ${rule.lhs} == ${rule.rhs}`;
      picker.append(option);
    }
  }
  renderProof();
});

el<HTMLButtonElement>("proof-submit").addEventListener("click", async () => {
  if (!proof || proof.busy) {
    return;
  }
  const after = el<HTMLInputElement>("proof-after").value;
  const ruleId = el<HTMLSelectElement>("proof-rule").value;
  const path = el<HTMLInputElement>("proof-path")
    .value.split(",")
    .filter((s) => s !== "")
    .map(Number);
  const verdict = ruleId
    ? await proof.submitStep(after, { rule: ruleId, path, dir: "L->R" })
    : await proof.freeEdit(after);
  el("proof-status").textContent = verdict.accepted
    ? verdict.semantic
      ? "accepted (semantic, no named rule)"
      : `accepted: ${verdict.rule}`
    : `rejected: ${verdict.reason}`;
  renderProof();
});

el<HTMLButtonElement>("proof-undo").addEventListener("click", () => {
  proof?.undo();
  renderProof();
});

el<HTMLButtonElement>("proof-export").addEventListener("click", () => {
  if (proof) {
    el<HTMLTextAreaElement>("proof-io").value = JSON.stringify(proof.toJSON());
  }
});

el<HTMLButtonElement>("proof-import").addEventListener("click", async () => {
  const data = JSON.parse(el<HTMLTextAreaElement>("proof-io").value);
  proof = await ProofSession.replay(client, data);
  renderProof();
});

// --- puzzle board -----------------------------------------------------------

let board: BoardSession | null = null;

function renderBoard(): void {
  const table = el<HTMLTableElement>("board-grid");
  table.innerHTML = "";
  if (!board) {
    return;
  }
  const spec = board.spec;
  for (const category of spec.categories) {
    const row = document.createElement("tr");
    const head = document.createElement("th");
    head.textContent = category.name;
    row.append(head);
    for (let position = 0; position < spec.positions; position++) {
      const cell = document.createElement("td");
      const values = board.candidates(position, category.name);
      cell.textContent = values.join(" ");
      if (values.length === 1) {
        cell.classList.add("fixed");
      }
      const bad = board.contradiction;
      if (bad && bad.cell[0] === position && bad.cell[1] === category.name) {
        cell.classList.add("contradiction");
      }
      cell.addEventListener("click", () => {
        const value = window.prompt(
          `place which ${category.name} at house ${position}?`,
          values[0] ?? ""
        );
        if (value && board) {
          board.place(position, category.name, value);
          renderBoard();
        }
      });
      row.append(cell);
    }
    table.append(row);
  }
}

el<HTMLButtonElement>("board-load").addEventListener("click", () => {
  const spec = JSON.parse(
    el<HTMLTextAreaElement>("board-spec").value
  ) as PuzzleSpec;
  board = new BoardSession(client, spec);
  el("board-trace").innerHTML = "";
  renderBoard();
});

el<HTMLButtonElement>("board-propagate").addEventListener("click", async () => {
  if (!board || board.busy) {
    return;
  }
  const log = el<HTMLUListElement>("board-trace");
  try {
    const trace = await board.propagate();
    for (const entry of trace) {
      const item = document.createElement("li");
      item.textContent =
        `house ${entry.cell[0]} ${entry.cell[1]}: ` +
        `-${entry.eliminated.join(",")} [${entry.rule}] ${entry.reason}`;
      log.append(item);
    }
    if (trace.length === 0) {
      const item = document.createElement("li");
      item.textContent = "fixpoint: no further deductions";
      log.append(item);
    }
  } catch {
    const item = document.createElement("li");
    item.textContent = board.contradiction
      ? `contradiction at house ${board.contradiction.cell[0]} ` +
        `(${board.contradiction.cell[1]}) — undo to recover`
      : "request failed";
    log.append(item);
  }
  renderBoard();
});

el<HTMLButtonElement>("board-undo").addEventListener("click", () => {
  board?.undo();
  renderBoard();
});
