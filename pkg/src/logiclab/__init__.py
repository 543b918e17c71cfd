"""logiclab: a workbench for propositional and first-order logic.

Parsing, truth tables, bounded finite-model checking, SAT solving,
equivalence-proof derivations and Einstein-style constraint puzzles,
exposed as a library, a CLI (`logiclab`) and a stateless HTTP service.
"""

from .errors import (
    ArityMismatch,
    BlowupExceeded,
    BudgetExceeded,
    ContradictionDetected,
    InvalidSpec,
    LogicError,
    MissingAtom,
    NotASentence,
    ParseError,
    PathInvalid,
    PatternMismatch,
    SortSizeZero,
    TooManyAtoms,
    UnboundVariable,
    UnknownMood,
    UnknownPredicate,
    UnknownRule,
)
from .formulas import (
    And,
    Atom,
    Const,
    Exists,
    FalseConst,
    Forall,
    Iff,
    Implies,
    Not,
    Or,
    Pred,
    TrueConst,
    Var,
    free_variables,
    render,
)
from .parser import parse_fol, parse_prop
from .puzzle import (
    PuzzleGrid,
    PuzzleSpec,
    Solution,
    check_uniqueness,
    einstein_spec,
    encode_puzzle,
    initial_grid,
    oracle_backtrack,
    propagate_step,
    solve_puzzle,
)
from .rewrite import (
    Derivation,
    RewriteRule,
    RewriteStep,
    apply_rule,
    derive_equiv,
    rule_catalog,
    validate_step,
)
from .sat import (
    CnfFormula,
    Literal,
    SatResult,
    dpll,
    equiv_sat,
    to_cnf_naive,
    to_nnf,
    tseitin,
)
from .semantics import (
    Categorical,
    EquivVerdict,
    FiniteModel,
    TruthTable,
    check_syllogism,
    encode_syllogism,
    equiv_finite,
    equiv_tt,
    eval_fol,
    eval_prop,
    truth_table,
)

__version__ = "0.1.0"
