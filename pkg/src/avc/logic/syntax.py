"""Formula language: sorts, signatures, terms and formulas.

Statements attached to claims are sentences in a many-sorted first-order
fragment with uninterpreted functions/predicates, rational arithmetic inside
terms, finite string-set membership, and free-text informal atoms. Everything
here is an immutable value; operations are pure functions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Union

# Built-in sort names. Anything else is a Named sort and must be declared
# in the enclosing Signature.
BOOL = "Bool"
INT = "Int"
REAL = "Real"
STR = "Str"
BUILTIN_SORTS = frozenset({BOOL, INT, REAL, STR})

# Reserved arithmetic function symbols usable inside terms.
ARITH_OPS = frozenset({"+", "-", "*"})

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def is_named_sort(sort: str) -> bool:
    return sort not in BUILTIN_SORTS


@dataclass(frozen=True)
class Signature:
    """Symbol declarations a formula is interpreted against.

    functions maps name -> (argument sorts, result sort); constants are
    0-ary functions. predicates maps name -> argument sorts. string_literals
    is the set of string constants known to the enclosing rationale (used by
    the SMT emitter to declare pairwise-distinct individuals).
    """

    sorts: frozenset = frozenset()
    functions: dict = field(default_factory=dict)
    predicates: dict = field(default_factory=dict)
    string_literals: frozenset = frozenset()

    def __post_init__(self):
        overlap = set(self.functions) & set(self.predicates)
        if overlap:
            raise ValueError(
                "names shared between functions and predicates: %s"
                % ", ".join(sorted(overlap))
            )

    def knows_sort(self, sort: str) -> bool:
        return sort in BUILTIN_SORTS or sort in self.sorts


# --- Terms ---------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    name: str
    sort: str


@dataclass(frozen=True)
class NumLit:
    value: Fraction

    def __post_init__(self):
        if not isinstance(self.value, Fraction):
            object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True)
class StrLit:
    value: str


@dataclass(frozen=True)
class Apply:
    func: str
    args: tuple = ()


Term = Union[Var, NumLit, StrLit, Apply]


# --- Formulas ------------------------------------------------------------


@dataclass(frozen=True)
class PredApp:
    pred: str
    args: tuple = ()


@dataclass(frozen=True)
class Equals:
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Compare:
    rel: str  # "<=" or "<"
    lhs: Term
    rhs: Term

    def __post_init__(self):
        if self.rel not in ("<=", "<"):
            raise ValueError("comparison relation must be <= or <")


@dataclass(frozen=True)
class MemberOf:
    term: Term
    choices: tuple  # nonempty, duplicate-free string literals

    def __post_init__(self):
        if not self.choices:
            raise ValueError("membership set must be nonempty")
        if len(set(self.choices)) != len(self.choices):
            raise ValueError("membership set must be duplicate-free")


_WS_RE = re.compile(r"\s+")


def normalize_informal_text(text: str) -> str:
    return _WS_RE.sub(" ", text).strip()


@dataclass(frozen=True)
class Informal:
    """Free-text atomic proposition. Text is stored trimmed and
    whitespace-collapsed; two informal atoms are the same atom iff their
    normalized texts are equal."""

    text: str

    def __post_init__(self):
        object.__setattr__(self, "text", normalize_informal_text(self.text))


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    parts: tuple

    def __post_init__(self):
        if len(self.parts) < 2:
            raise ValueError("And requires at least two conjuncts; use make_and")


@dataclass(frozen=True)
class Or:
    parts: tuple

    def __post_init__(self):
        if len(self.parts) < 2:
            raise ValueError("Or requires at least two disjuncts; use make_or")


@dataclass(frozen=True)
class Implies:
    lhs: "Formula"
    rhs: "Formula"


@dataclass(frozen=True)
class Iff:
    lhs: "Formula"
    rhs: "Formula"


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


@dataclass(frozen=True)
class TrueF:
    pass


@dataclass(frozen=True)
class FalseF:
    pass


TRUE = TrueF()
FALSE = FalseF()


def make_and(parts) -> "Formula":
    parts = tuple(parts)
    if not parts:
        return TRUE
    if len(parts) == 1:
        return parts[0]
    return And(parts)


def make_or(parts) -> "Formula":
    parts = tuple(parts)
    if not parts:
        return FALSE
    if len(parts) == 1:
        return parts[0]
    return Or(parts)

Formula = Union[
    PredApp, Equals, Compare, MemberOf, Informal,
    Not, And, Or, Implies, Iff, Forall, Exists, TrueF, FalseF,
]

QUANTIFIERS = (Forall, Exists)
# Formula constructors that are propositional connectives; everything else
# is atomic from the propositional skeleton's point of view.
CONNECTIVES = (Not, And, Or, Implies, Iff, TrueF, FalseF)


# --- Diagnostics ----------------------------------------------------------


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str

    def __str__(self):
        return "%s: %s" % (self.code, self.message)


# --- Well-formedness ------------------------------------------------------


def infer_term_sort(sig: Signature, term: Term, env: dict, out: list) -> Optional[str]:
    """Returns the sort of term under variable binding env, or None after
    recording diagnostics. Numeric literals are Int when integral and Real
    otherwise; compatibility with an expected sort is decided by callers via
    sorts_compatible."""
    if isinstance(term, Var):
        bound = env.get(term.name)
        if bound is None:
            out.append(Diagnostic("free-variable", "unbound variable '%s'" % term.name))
            return None
        if bound != term.sort:
            out.append(Diagnostic(
                "sort-mismatch",
                "variable '%s' annotated %s but bound at sort %s"
                % (term.name, term.sort, bound)))
            return None
        return bound
    if isinstance(term, NumLit):
        return INT if term.value.denominator == 1 else REAL
    if isinstance(term, StrLit):
        return STR
    if isinstance(term, Apply):
        if term.func in ARITH_OPS:
            if len(term.args) != 2:
                out.append(Diagnostic("arity", "'%s' takes 2 arguments" % term.func))
                return None
            sorts = [infer_term_sort(sig, a, env, out) for a in term.args]
            if any(s is None for s in sorts):
                return None
            for s in sorts:
                if s not in (INT, REAL):
                    out.append(Diagnostic(
                        "sort-mismatch",
                        "arithmetic '%s' applied to non-numeric sort %s" % (term.func, s)))
                    return None
            return REAL if REAL in sorts else INT
        entry = sig.functions.get(term.func)
        if entry is None:
            out.append(Diagnostic("undeclared-symbol", "undeclared function '%s'" % term.func))
            return None
        arg_sorts, result = entry
        if len(arg_sorts) != len(term.args):
            out.append(Diagnostic(
                "arity", "function '%s' expects %d arguments, got %d"
                % (term.func, len(arg_sorts), len(term.args))))
            return None
        for i, (expected, arg) in enumerate(zip(arg_sorts, term.args)):
            check_term(sig, arg, expected, env, out, "argument %d of '%s'" % (i + 1, term.func))
        return result
    raise TypeError("not a term: %r" % (term,))


def sorts_compatible(actual: str, expected: str) -> bool:
    if actual == expected:
        return True
    # Integral literals and Int-sorted arithmetic results may stand where a
    # Real is expected; no other coercions.
    return actual == INT and expected == REAL


def check_term(sig: Signature, term: Term, expected: str, env: dict, out: list,
               where: str = "") -> None:
    actual = infer_term_sort(sig, term, env, out)
    if actual is None:
        return
    if not sorts_compatible(actual, expected):
        suffix = " (%s)" % where if where else ""
        out.append(Diagnostic(
            "sort-mismatch",
            "expected sort %s, got %s in %s%s"
            % (expected, actual, format_term(term), suffix)))


def well_formed(sig: Signature, phi: Formula) -> list:
    """Empty list iff phi is a closed sentence over sig with all symbols
    declared at matching sorts."""
    out: list = []
    _wf(sig, phi, {}, out)
    return out


def _wf(sig: Signature, phi: Formula, env: dict, out: list) -> None:
    if isinstance(phi, (TrueF, FalseF, Informal)):
        return
    if isinstance(phi, PredApp):
        sig_args = sig.predicates.get(phi.pred)
        if sig_args is None:
            out.append(Diagnostic("undeclared-symbol", "undeclared predicate '%s'" % phi.pred))
            return
        if len(sig_args) != len(phi.args):
            out.append(Diagnostic(
                "arity", "predicate '%s' expects %d arguments, got %d"
                % (phi.pred, len(sig_args), len(phi.args))))
            return
        for i, (expected, arg) in enumerate(zip(sig_args, phi.args)):
            check_term(sig, arg, expected, env, out,
                       "argument %d of '%s'" % (i + 1, phi.pred))
        return
    if isinstance(phi, Equals):
        ls = infer_term_sort(sig, phi.lhs, env, out)
        rs = infer_term_sort(sig, phi.rhs, env, out)
        if ls is not None and rs is not None:
            if not (sorts_compatible(ls, rs) or sorts_compatible(rs, ls)):
                out.append(Diagnostic(
                    "sort-mismatch", "equality between sorts %s and %s" % (ls, rs)))
        return
    if isinstance(phi, Compare):
        for side in (phi.lhs, phi.rhs):
            s = infer_term_sort(sig, side, env, out)
            if s is not None and s not in (INT, REAL):
                out.append(Diagnostic(
                    "sort-mismatch", "comparison over non-numeric sort %s" % s))
        return
    if isinstance(phi, MemberOf):
        check_term(sig, phi.term, STR, env, out)
        return
    if isinstance(phi, Not):
        _wf(sig, phi.body, env, out)
        return
    if isinstance(phi, (And, Or)):
        for part in phi.parts:
            _wf(sig, part, env, out)
        return
    if isinstance(phi, (Implies, Iff)):
        _wf(sig, phi.lhs, env, out)
        _wf(sig, phi.rhs, env, out)
        return
    if isinstance(phi, (Forall, Exists)):
        if not sig.knows_sort(phi.sort):
            out.append(Diagnostic("undeclared-sort", "undeclared sort '%s'" % phi.sort))
        if phi.var in sig.functions or phi.var in sig.predicates:
            # A binder shadowing a declared symbol cannot be printed
            # unambiguously, so such formulas are rejected outright.
            out.append(Diagnostic(
                "shadowed-symbol",
                "bound variable '%s' collides with a declared symbol" % phi.var))
        _wf(sig, phi.body, {**env, phi.var: phi.sort}, out)
        return
    raise TypeError("not a formula: %r" % (phi,))


# --- Traversal helpers ----------------------------------------------------


def subformulas(phi: Formula) -> Iterator[Formula]:
    yield phi
    if isinstance(phi, Not):
        yield from subformulas(phi.body)
    elif isinstance(phi, (And, Or)):
        for part in phi.parts:
            yield from subformulas(part)
    elif isinstance(phi, (Implies, Iff)):
        yield from subformulas(phi.lhs)
        yield from subformulas(phi.rhs)
    elif isinstance(phi, (Forall, Exists)):
        yield from subformulas(phi.body)


def string_literals_of(phi: Formula) -> frozenset:
    """All string literals occurring in phi (term positions and membership sets)."""
    found = set()

    def walk_term(t):
        if isinstance(t, StrLit):
            found.add(t.value)
        elif isinstance(t, Apply):
            for a in t.args:
                walk_term(a)

    for sub in subformulas(phi):
        if isinstance(sub, PredApp):
            for a in sub.args:
                walk_term(a)
        elif isinstance(sub, (Equals, Compare)):
            walk_term(sub.lhs)
            walk_term(sub.rhs)
        elif isinstance(sub, MemberOf):
            walk_term(sub.term)
            found.update(sub.choices)
    return frozenset(found)


# --- Printing -------------------------------------------------------------


def escape_string(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def format_number(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    # Prefer decimal notation when the denominator is 2^a * 5^b; otherwise
    # fall back to the p/q literal form.
    den = value.denominator
    for p in (2, 5):
        while den % p == 0:
            den //= p
    if den == 1:
        scaled = value
        digits = 0
        while scaled.denominator != 1:
            scaled *= 10
            digits += 1
        text = str(abs(scaled.numerator)).rjust(digits + 1, "0")
        sign = "-" if value < 0 else ""
        return "%s%s.%s" % (sign, text[:-digits], text[-digits:])
    return "%d/%d" % (value.numerator, value.denominator)


def format_term(term: Term) -> str:
    if isinstance(term, Var):
        return term.name
    if isinstance(term, NumLit):
        return format_number(term.value)
    if isinstance(term, StrLit):
        return '"%s"' % escape_string(term.value)
    if isinstance(term, Apply):
        if term.func in ARITH_OPS:
            lhs, rhs = term.args
            level = 1 if term.func in ("+", "-") else 2
            left = _term_at(lhs, level)
            # +/- are left-associative: the right operand needs parens at the
            # same level; * likewise.
            right = _term_at(rhs, level + 1)
            return "%s %s %s" % (left, term.func, right)
        if not term.args:
            return term.func
        return "%s(%s)" % (term.func, ", ".join(format_term(a) for a in term.args))
    raise TypeError("not a term: %r" % (term,))


def _term_level(term: Term) -> int:
    if isinstance(term, Apply) and term.func in ARITH_OPS:
        return 1 if term.func in ("+", "-") else 2
    return 3


def _term_at(term: Term, minimum: int) -> str:
    text = format_term(term)
    if _term_level(term) < minimum:
        return "(%s)" % text
    return text


# Precedence levels: iff 1, implies 2, or 3, and 4, not 5, atoms 6.
# A quantifier's body extends maximally to the right, so quantified formulas
# print bare only at minimum 0 (top level, inside parens, quantifier bodies)
# where the extension is bounded by the end of the enclosing group; in any
# tighter position they are parenthesized.


def format_formula(phi: Formula) -> str:
    return _fmt(phi, 0)


def _fmt(phi: Formula, minimum: int) -> str:
    if isinstance(phi, TrueF):
        return "true"
    if isinstance(phi, FalseF):
        return "false"
    if isinstance(phi, Informal):
        return "`%s`" % phi.text
    if isinstance(phi, PredApp):
        if not phi.args:
            return phi.pred
        return "%s(%s)" % (phi.pred, ", ".join(format_term(a) for a in phi.args))
    if isinstance(phi, Equals):
        return "%s == %s" % (format_term(phi.lhs), format_term(phi.rhs))
    if isinstance(phi, Compare):
        return "%s %s %s" % (format_term(phi.lhs), phi.rel, format_term(phi.rhs))
    if isinstance(phi, MemberOf):
        lits = ", ".join('"%s"' % escape_string(c) for c in phi.choices)
        return "%s in {%s}" % (format_term(phi.term), lits)
    if isinstance(phi, (Forall, Exists)):
        word = "forall" if isinstance(phi, Forall) else "exists"
        text = "%s %s:%s. %s" % (word, phi.var, phi.sort, _fmt(phi.body, 0))
        if minimum == 0:
            return text
        return "(%s)" % text
    if isinstance(phi, Not):
        return "!%s" % _fmt(phi.body, 5)
    if isinstance(phi, And):
        return _wrap(" && ".join(_fmt(p, 5) for p in phi.parts), 4, minimum)
    if isinstance(phi, Or):
        return _wrap(" || ".join(_fmt(p, 4) for p in phi.parts), 3, minimum)
    if isinstance(phi, Implies):
        # Right-associative: a -> b -> c parses as a -> (b -> c).
        return _wrap("%s -> %s" % (_fmt(phi.lhs, 3), _fmt(phi.rhs, 2)), 2, minimum)
    if isinstance(phi, Iff):
        return _wrap("%s <-> %s" % (_fmt(phi.lhs, 2), _fmt(phi.rhs, 2)), 1, minimum)
    raise TypeError("not a formula: %r" % (phi,))


def _wrap(text: str, level: int, minimum: int) -> str:
    if level < minimum:
        return "(%s)" % text
    return text


# --- Canonical serialization ----------------------------------------------


def serialize(phi: Formula) -> str:
    """Deterministic structural serialization; equal strings iff equal values.
    Used as the sorting key for normalized conjuncts and as the atom key."""
    if isinstance(phi, TrueF):
        return "(true)"
    if isinstance(phi, FalseF):
        return "(false)"
    if isinstance(phi, Informal):
        return "(informal %r)" % phi.text
    if isinstance(phi, PredApp):
        return "(pred %s %s)" % (phi.pred, " ".join(_ser_term(a) for a in phi.args))
    if isinstance(phi, Equals):
        return "(= %s %s)" % (_ser_term(phi.lhs), _ser_term(phi.rhs))
    if isinstance(phi, Compare):
        return "(%s %s %s)" % (phi.rel, _ser_term(phi.lhs), _ser_term(phi.rhs))
    if isinstance(phi, MemberOf):
        return "(in %s %s)" % (_ser_term(phi.term), " ".join(map(repr, phi.choices)))
    if isinstance(phi, Not):
        return "(not %s)" % serialize(phi.body)
    if isinstance(phi, And):
        return "(and %s)" % " ".join(serialize(p) for p in phi.parts)
    if isinstance(phi, Or):
        return "(or %s)" % " ".join(serialize(p) for p in phi.parts)
    if isinstance(phi, Implies):
        return "(=> %s %s)" % (serialize(phi.lhs), serialize(phi.rhs))
    if isinstance(phi, Iff):
        return "(<=> %s %s)" % (serialize(phi.lhs), serialize(phi.rhs))
    if isinstance(phi, Forall):
        return "(forall %s %s %s)" % (phi.var, phi.sort, serialize(phi.body))
    if isinstance(phi, Exists):
        return "(exists %s %s %s)" % (phi.var, phi.sort, serialize(phi.body))
    raise TypeError("not a formula: %r" % (phi,))


def _ser_term(term: Term) -> str:
    if isinstance(term, Var):
        return "(var %s %s)" % (term.name, term.sort)
    if isinstance(term, NumLit):
        return "(num %d/%d)" % (term.value.numerator, term.value.denominator)
    if isinstance(term, StrLit):
        return "(str %r)" % term.value
    if isinstance(term, Apply):
        return "(app %s %s)" % (term.func, " ".join(_ser_term(a) for a in term.args))
    raise TypeError("not a term: %r" % (term,))
