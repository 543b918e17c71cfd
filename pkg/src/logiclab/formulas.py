"""Immutable formula trees shared by the propositional and first-order layers.

Both logics use the same connective nodes, so the rewrite engine, the
negation-normal-form pass and the pretty-printer work uniformly. A formula
is "propositional" when it contains only atoms and connectives, and
"first-order" when it contains predicates or quantifiers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Tuple, Union

ATOM_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")

DEFAULT_SORT = "U"


# --- terms -----------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    name: str


Term = Union[Var, Const]


# --- formula nodes ---------------------------------------------------------

@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class TrueConst:
    pass


@dataclass(frozen=True)
class FalseConst:
    pass


@dataclass(frozen=True)
class Not:
    child: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Pred:
    name: str
    args: Tuple[Term, ...] = ()


@dataclass(frozen=True)
class Forall:
    var: str
    sort: str
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    sort: str
    body: "Formula"


Formula = Union[
    Atom, TrueConst, FalseConst, Not, And, Or, Implies, Iff, Pred, Forall, Exists
]

TRUE = TrueConst()
FALSE = FalseConst()

BINARY = (And, Or, Implies, Iff)
QUANTIFIERS = (Forall, Exists)

# Path convention: child indices from the root. Binary nodes have children
# 0 (left) and 1 (right); Not and quantifiers have a single child 0.
Path = Tuple[int, ...]


def children(f: Formula) -> Tuple[Formula, ...]:
    if isinstance(f, Not):
        return (f.child,)
    if isinstance(f, BINARY):
        return (f.left, f.right)
    if isinstance(f, QUANTIFIERS):
        return (f.body,)
    return ()


def with_children(f: Formula, kids: Tuple[Formula, ...]) -> Formula:
    if isinstance(f, Not):
        return Not(kids[0])
    if isinstance(f, BINARY):
        return type(f)(kids[0], kids[1])
    if isinstance(f, QUANTIFIERS):
        return type(f)(f.var, f.sort, kids[0])
    return f


def subformula_at(f: Formula, path) -> Formula:
    from .errors import PathInvalid

    node = f
    for i, step in enumerate(path):
        kids = children(node)
        if step < 0 or step >= len(kids):
            raise PathInvalid(path)
        node = kids[step]
    return node


def replace_at(f: Formula, path, replacement: Formula) -> Formula:
    from .errors import PathInvalid

    if not path:
        return replacement
    kids = children(f)
    step = path[0]
    if step < 0 or step >= len(kids):
        raise PathInvalid(path)
    new_kids = list(kids)
    new_kids[step] = replace_at(kids[step], path[1:], replacement)
    return with_children(f, tuple(new_kids))


def preorder_paths(f: Formula, prefix: Path = ()) -> Iterator[Path]:
    """Yield every path in pre-order, which is also path-lexicographic order."""
    yield prefix
    for i, kid in enumerate(children(f)):
        yield from preorder_paths(kid, prefix + (i,))


def is_propositional(f: Formula) -> bool:
    if isinstance(f, (Pred,) + QUANTIFIERS):
        return False
    return all(is_propositional(k) for k in children(f))


def atoms(f: Formula) -> list:
    """Sorted atom names of a propositional formula."""
    out = set()

    def walk(node):
        if isinstance(node, Atom):
            out.add(node.name)
        for k in children(node):
            walk(k)

    walk(f)
    return sorted(out)


def predicates(f: Formula) -> dict:
    """Map predicate name -> arity for every predicate occurrence."""
    from .errors import ArityMismatch

    out: dict = {}

    def walk(node):
        if isinstance(node, Pred):
            seen = out.get(node.name)
            if seen is None:
                out[node.name] = len(node.args)
            elif seen != len(node.args):
                raise ArityMismatch(node.name, seen, len(node.args))
        for k in children(node):
            walk(k)

    walk(f)
    return out


def free_variables(f: Formula) -> frozenset:
    """Free variables of a first-order formula as (name, sort) pairs.

    A variable that is never bound has the default sort.
    """
    out = set()

    def walk(node, bound):
        if isinstance(node, Pred):
            for arg in node.args:
                if isinstance(arg, Var) and arg.name not in bound:
                    out.add((arg.name, DEFAULT_SORT))
        elif isinstance(node, QUANTIFIERS):
            walk(node.body, bound | {node.var})
        else:
            for k in children(node):
                walk(k, bound)

    walk(f, frozenset())
    return frozenset(out)


def bound_sorts(f: Formula) -> dict:
    """Map variable name -> sort from quantifier binders (shadowing is a
    parse error, so each name has a single binder)."""
    out: dict = {}

    def walk(node):
        if isinstance(node, QUANTIFIERS):
            out[node.var] = node.sort
        for k in children(node):
            walk(k)

    walk(f)
    return out


# --- rendering -------------------------------------------------------------

_PREC_QUANT = 0
_PREC_IFF = 1
_PREC_IMPLIES = 2
_PREC_OR = 3
_PREC_AND = 4
_PREC_NOT = 5
_PREC_ATOM = 6

_OP_TEXT = {And: "&", Or: "|", Implies: "->", Iff: "<->"}
_OP_PREC = {And: _PREC_AND, Or: _PREC_OR, Implies: _PREC_IMPLIES, Iff: _PREC_IFF}
# ->/<-> are right-associative, &/| left-associative.
_RIGHT_ASSOC = (Implies, Iff)


def _prec(f: Formula) -> int:
    if isinstance(f, BINARY):
        return _OP_PREC[type(f)]
    if isinstance(f, Not):
        return _PREC_NOT
    if isinstance(f, QUANTIFIERS):
        return _PREC_QUANT
    return _PREC_ATOM


def render(f: Formula) -> str:
    """Deterministic text form with minimal parentheses; re-parsing the
    result reproduces the tree structurally."""
    return _render(f, 0)


def _render(f: Formula, min_prec: int) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, TrueConst):
        return "true"
    if isinstance(f, FalseConst):
        return "false"
    if isinstance(f, Pred):
        if not f.args:
            return f.name
        return f.name + "(" + ",".join(a.name for a in f.args) + ")"
    if isinstance(f, Not):
        text = "!" + _render(f.child, _PREC_NOT)
        return _wrap(text, _PREC_NOT, min_prec)
    if isinstance(f, QUANTIFIERS):
        word = "forall" if isinstance(f, Forall) else "exists"
        binder = f.var if f.sort == DEFAULT_SORT else f"{f.var}:{f.sort}"
        text = f"{word} {binder}. {_render(f.body, 0)}"
        return _wrap(text, _PREC_QUANT, min_prec)
    prec = _OP_PREC[type(f)]
    if type(f) in _RIGHT_ASSOC:
        left, right = _render(f.left, prec + 1), _render(f.right, prec)
    else:
        left, right = _render(f.left, prec), _render(f.right, prec + 1)
    return _wrap(f"{left} {_OP_TEXT[type(f)]} {right}", prec, min_prec)


def _wrap(text: str, prec: int, min_prec: int) -> str:
    return f"({text})" if prec < min_prec else text


# --- JSON tree form (the shape served by /api/parse) -----------------------

def to_json(f: Formula) -> dict:
    if isinstance(f, Atom):
        return {"node": "atom", "name": f.name}
    if isinstance(f, TrueConst):
        return {"node": "true"}
    if isinstance(f, FalseConst):
        return {"node": "false"}
    if isinstance(f, Not):
        return {"node": "not", "child": to_json(f.child)}
    if isinstance(f, BINARY):
        kind = {And: "and", Or: "or", Implies: "implies", Iff: "iff"}[type(f)]
        return {"node": kind, "left": to_json(f.left), "right": to_json(f.right)}
    if isinstance(f, Pred):
        return {
            "node": "pred",
            "name": f.name,
            "args": [
                {"term": "var" if isinstance(a, Var) else "const", "name": a.name}
                for a in f.args
            ],
        }
    word = "forall" if isinstance(f, Forall) else "exists"
    return {"node": word, "var": f.var, "sort": f.sort, "body": to_json(f.body)}


def from_json(data: dict) -> Formula:
    node = data["node"]
    if node == "atom":
        return Atom(data["name"])
    if node == "true":
        return TRUE
    if node == "false":
        return FALSE
    if node == "not":
        return Not(from_json(data["child"]))
    if node in ("and", "or", "implies", "iff"):
        cls = {"and": And, "or": Or, "implies": Implies, "iff": Iff}[node]
        return cls(from_json(data["left"]), from_json(data["right"]))
    if node == "pred":
        args = tuple(
            Var(a["name"]) if a["term"] == "var" else Const(a["name"])
            for a in data["args"]
        )
        return Pred(data["name"], args)
    if node in ("forall", "exists"):
        cls = Forall if node == "forall" else Exists
        return cls(data["var"], data.get("sort", DEFAULT_SORT), from_json(data["body"]))
    raise ValueError(f"unknown formula node {node!r}")
