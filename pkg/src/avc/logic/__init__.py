"""Formula language: syntax, parser, printer, normalization, atomization."""

from .syntax import (  # noqa: F401
    ARITH_OPS, BOOL, BUILTIN_SORTS, FALSE, INT, REAL, STR, TRUE,
    And, Apply, Compare, Diagnostic, Equals, Exists, FalseF, Forall,
    Formula, Iff, Implies, Informal, MemberOf, Not, NumLit, Or, PredApp,
    Signature, StrLit, Term, TrueF, Var,
    escape_string, format_formula, format_number, format_term,
    is_named_sort, make_and, make_or, normalize_informal_text,
    serialize, string_literals_of, subformulas, well_formed,
)
from .parser import (  # noqa: F401
    FormulaError, FormulaSyntaxError, FormulaValidationError, parse_formula,
)
from .normalize import (  # noqa: F401
    AtomTable, PAnd, PAtom, PFalse, PIff, PImplies, PNot, POr, PTrue,
    atomize, eval_skeleton, normalize,
)
