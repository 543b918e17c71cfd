/** Path-addressed navigation over formula AST JSON.
 *
 * Paths are child-index tuples matching the service's rewrite paths:
 * `not` and quantifier nodes have child 0, binary nodes children 0/1,
 * leaves have none.
 */

import type { AstNode } from "./api";

export type Path = number[];

export function children(node: AstNode): AstNode[] {
  if (node.child) {
    return [node.child];
  }
  if (node.left && node.right) {
    return [node.left, node.right];
  }
  if (node.body) {
    return [node.body];
  }
  return [];
}

export function nodeAt(root: AstNode, path: Path): AstNode | null {
  let node: AstNode = root;
  for (const index of path) {
    const kids = children(node);
    const next = kids[index];
    if (!next) {
      return null;
    }
    node = next;
  }
  return node;
}

/** All paths in pre-order, the order the service searches for rules. */
export function allPaths(root: AstNode): Path[] {
  const out: Path[] = [];
  const walk = (node: AstNode, path: Path): void => {
    out.push(path);
    children(node).forEach((kid, index) => walk(kid, [...path, index]));
  };
  walk(root, []);
  return out;
}

const CONNECTIVES: Record<string, string> = {
  not: "!",
  and: "&",
  or: "|",
  implies: "->",
  iff: "<->",
  forall: "forall",
  exists: "exists",
};

/** Short label for a tree-view row. */
export function labelOf(node: AstNode): string {
  switch (node.node) {
    case "atom":
      return node.name ?? "?";
    case "true":
    case "false":
      return node.node;
    case "pred":
      return `${node.name}(${(node.args ?? []).join(",")})`;
    case "forall":
    case "exists":
      return `${node.node} ${node.var}:${node.sort}`;
    default:
      return CONNECTIVES[node.node] ?? node.node;
  }
}

/** Paths at which a given rule could plausibly anchor, for highlighting.
 * This is a cheap client-side filter by root connective; the service is
 * the authority on whether the rule actually matches. */
export function candidatePaths(root: AstNode, ruleLhs: string): Path[] {
  const want = topConnective(ruleLhs);
  if (!want) {
    return allPaths(root);
  }
  return allPaths(root).filter((path) => {
    const node = nodeAt(root, path);
    return node !== null && node.node === want;
  });
}

function topConnective(rendered: string): AstNode["node"] | null {
  const text = rendered.trim();
  // schemas are rendered with minimal parens, so scan at depth zero;
  // a leading negation only wins when no binary connective outranks it
  let depth = 0;
  let best: AstNode["node"] | null = null;
  const rank: Record<string, number> = { iff: 4, implies: 3, or: 2, and: 1 };
  for (let i = 0; i < text.length; i++) {
    const ch = text[i];
    if (ch === "(") depth++;
    else if (ch === ")") depth--;
    else if (depth === 0) {
      let found: AstNode["node"] | null = null;
      if (text.startsWith("<->", i)) found = "iff";
      else if (text.startsWith("->", i)) found = "implies";
      else if (ch === "|") found = "or";
      else if (ch === "&") found = "and";
      if (found && (!best || rank[found]! > rank[best]!)) {
        best = found;
      }
    }
  }
  if (best) {
    return best;
  }
  return text.startsWith("!") || text.startsWith("~") ? "not" : null;
}
