"""Exception hierarchy shared by every module.

Each error carries a stable machine-readable ``code`` so the CLI and the
HTTP service can map failures onto the documented error envelope without
string-matching messages.
"""

from __future__ import annotations


class LogicError(Exception):
    """Base class for all domain errors."""

    code = "error"


class ParseError(LogicError):
    code = "parse_error"

    def __init__(self, message, *, offset, line, column, expected, found):
        super().__init__(message)
        self.offset = offset  # byte offset into the UTF-8 input
        self.line = line
        self.column = column
        self.expected = expected
        self.found = found

    def to_json(self):
        return {
            "offset": self.offset,
            "line": self.line,
            "column": self.column,
            "expected": self.expected,
            "found": self.found,
        }


class ArityMismatch(LogicError):
    code = "arity_mismatch"

    def __init__(self, name, arity_a, arity_b):
        super().__init__(
            f"predicate {name!r} used with arity {arity_a} and arity {arity_b}"
        )
        self.name = name
        self.arities = (arity_a, arity_b)


class TooManyAtoms(LogicError):
    code = "too_many_atoms"


class MissingAtom(LogicError):
    code = "missing_atom"

    def __init__(self, name):
        super().__init__(f"assignment does not cover atom {name!r}")
        self.name = name


class UnboundVariable(LogicError):
    code = "unbound_variable"

    def __init__(self, name):
        super().__init__(f"variable {name!r} is not bound")
        self.name = name


class UnknownPredicate(LogicError):
    code = "unknown_predicate"

    def __init__(self, name):
        super().__init__(f"model has no table for predicate {name!r}")
        self.name = name


class SortSizeZero(LogicError):
    code = "sort_size_zero"

    def __init__(self, sort):
        super().__init__(f"sort {sort!r} has no elements")
        self.sort = sort


class NotASentence(LogicError):
    code = "not_a_sentence"

    def __init__(self, free_vars):
        names = ", ".join(sorted(n for n, _ in free_vars))
        super().__init__(f"formula has free variables: {names}")
        self.free_vars = frozenset(free_vars)


class BudgetExceeded(LogicError):
    code = "budget_exceeded"

    def __init__(self, enumerated, sizes_reached):
        super().__init__(
            f"enumeration budget exhausted after {enumerated} interpretations "
            f"(stopped at sort sizes {sizes_reached})"
        )
        self.enumerated = enumerated
        self.sizes_reached = sizes_reached


class UnknownMood(LogicError):
    code = "unknown_mood"

    def __init__(self, mood):
        super().__init__(f"unknown syllogism mood {mood!r}; expected A, E, I or O")
        self.mood = mood


class PathInvalid(LogicError):
    code = "path_invalid"

    def __init__(self, path):
        super().__init__(f"path {list(path)} does not address a subformula")
        self.path = tuple(path)


class PatternMismatch(LogicError):
    code = "pattern_mismatch"

    def __init__(self, rule_id, path):
        super().__init__(f"rule {rule_id!r} does not match at path {list(path)}")
        self.rule_id = rule_id
        self.path = tuple(path)


class UnknownRule(LogicError):
    code = "unknown_rule"

    def __init__(self, rule_id):
        super().__init__(f"no rule with id {rule_id!r} in the catalog")
        self.rule_id = rule_id


class BlowupExceeded(LogicError):
    code = "blowup_exceeded"

    def __init__(self, estimate, limit):
        super().__init__(
            f"naive CNF would need about {estimate} clauses (limit {limit}); "
            "use the Tseitin encoding instead"
        )
        self.estimate = estimate
        self.limit = limit


class InvalidSpec(LogicError):
    code = "invalid_spec"


class ContradictionDetected(LogicError):
    code = "contradiction"

    def __init__(self, position, category):
        super().__init__(
            f"candidate set for house {position}, category {category!r} became empty"
        )
        self.position = position
        self.category = category
