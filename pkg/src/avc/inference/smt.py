"""SMT-LIB 2 script emission for inference validity queries.

The script asserts every premise and the negated conclusion, so unsat means
the inference is valid. Str and all named sorts are uninterpreted; every
string literal becomes a fresh constant with a pairwise-distinct assertion,
and membership in a literal set lowers to an equality disjunction. Output is
deterministic: declarations are sorted, generated names are stable.
"""

from __future__ import annotations

import json

from ..logic import syntax as S
from ..logic.syntax import (
    And, Apply, Compare, Equals, Exists, FalseF, Forall, Iff, Implies,
    Informal, MemberOf, Not, NumLit, Or, PredApp, StrLit, TrueF, Var,
)


class SmtEmitError(Exception):
    pass


def _gen_names(items, prefix, taken):
    names = {}
    for i, item in enumerate(sorted(items)):
        name = "%s%d" % (prefix, i)
        while name in taken:
            name += "_"
        taken.add(name)
        names[item] = name
    return names


def emit_smt(sig: S.Signature, premises, conclusion) -> str:
    """Deterministic SMT-LIB 2 text deciding (AND premises) => conclusion."""
    formulas = list(premises) + [conclusion]
    literals = set(sig.string_literals)
    informals = set()
    for phi in formulas:
        literals |= S.string_literals_of(phi)
        for sub in S.subformulas(phi):
            if isinstance(sub, Informal):
                informals.add(sub.text)

    taken = set(sig.functions) | set(sig.predicates) | set(sig.sorts)
    lit_names = _gen_names(literals, "strlit_", taken)
    informal_names = _gen_names(informals, "informal_", taken)

    out = []
    out.append("(set-logic ALL)")
    out.append("(declare-sort Str 0)")
    for sort in sorted(sig.sorts):
        out.append("(declare-sort %s 0)" % sort)
    for lit in sorted(lit_names):
        out.append("(declare-const %s Str) ; %s" % (lit_names[lit], json.dumps(lit)))
    if len(lit_names) > 1:
        out.append("(assert (distinct %s))"
                   % " ".join(lit_names[lit] for lit in sorted(lit_names)))
    for name in sorted(sig.functions):
        arg_sorts, result = sig.functions[name]
        out.append("(declare-fun %s (%s) %s)" % (name, " ".join(arg_sorts), result))
    for name in sorted(sig.predicates):
        arg_sorts = sig.predicates[name]
        out.append("(declare-fun %s (%s) Bool)" % (name, " ".join(arg_sorts)))
    for text in sorted(informal_names):
        out.append("(declare-const %s Bool) ; %s" % (informal_names[text], json.dumps(text)))

    emitter = _Emitter(sig, lit_names, informal_names)
    for premise in premises:
        out.append("(assert %s)" % emitter.formula(premise, {}))
    out.append("(assert (not %s))" % emitter.formula(conclusion, {}))
    out.append("(check-sat)")
    return "\n".join(out) + "\n"


class _Emitter:
    def __init__(self, sig, lit_names, informal_names):
        self.sig = sig
        self.lit_names = lit_names
        self.informal_names = informal_names

    def formula(self, phi, env) -> str:
        if isinstance(phi, TrueF):
            return "true"
        if isinstance(phi, FalseF):
            return "false"
        if isinstance(phi, Informal):
            return self.informal_names[phi.text]
        if isinstance(phi, PredApp):
            if not phi.args:
                return phi.pred
            expected = self.sig.predicates[phi.pred]
            args = " ".join(self.term(a, s, env) for a, s in zip(phi.args, expected))
            return "(%s %s)" % (phi.pred, args)
        if isinstance(phi, Equals):
            expected = self._join_sort(phi.lhs, phi.rhs, env)
            return "(= %s %s)" % (
                self.term(phi.lhs, expected, env), self.term(phi.rhs, expected, env))
        if isinstance(phi, Compare):
            expected = self._join_sort(phi.lhs, phi.rhs, env)
            return "(%s %s %s)" % (
                phi.rel, self.term(phi.lhs, expected, env), self.term(phi.rhs, expected, env))
        if isinstance(phi, MemberOf):
            subject = self.term(phi.term, S.STR, env)
            tests = ["(= %s %s)" % (subject, self.lit_names[c]) for c in phi.choices]
            if len(tests) == 1:
                return tests[0]
            return "(or %s)" % " ".join(tests)
        if isinstance(phi, Not):
            return "(not %s)" % self.formula(phi.body, env)
        if isinstance(phi, And):
            return "(and %s)" % " ".join(self.formula(p, env) for p in phi.parts)
        if isinstance(phi, Or):
            return "(or %s)" % " ".join(self.formula(p, env) for p in phi.parts)
        if isinstance(phi, Implies):
            return "(=> %s %s)" % (self.formula(phi.lhs, env), self.formula(phi.rhs, env))
        if isinstance(phi, Iff):
            return "(= %s %s)" % (self.formula(phi.lhs, env), self.formula(phi.rhs, env))
        if isinstance(phi, (Forall, Exists)):
            word = "forall" if isinstance(phi, Forall) else "exists"
            inner = self.formula(phi.body, {**env, phi.var: phi.sort})
            return "(%s ((%s %s)) %s)" % (word, phi.var, phi.sort, inner)
        raise SmtEmitError("unsupported construct: %r" % (phi,))

    def _infer(self, term, env) -> str:
        diags: list = []
        sort = S.infer_term_sort(self.sig, term, env, diags)
        if sort is None:
            raise SmtEmitError("cannot emit ill-sorted term: %s" % diags[0])
        return sort

    def _join_sort(self, lhs, rhs, env) -> str:
        a = self._infer(lhs, env)
        b = self._infer(rhs, env)
        if a == b:
            return a
        if {a, b} == {S.INT, S.REAL}:
            return S.REAL
        raise SmtEmitError("equality between incompatible sorts %s and %s" % (a, b))

    def term(self, term, expected, env) -> str:
        if isinstance(term, Var):
            return term.name
        if isinstance(term, StrLit):
            return self.lit_names[term.value]
        if isinstance(term, NumLit):
            return _numeral(term.value, expected)
        if isinstance(term, Apply):
            if term.func in S.ARITH_OPS:
                sort = self._infer(term, env)
                target = S.REAL if S.REAL in (sort, expected) else S.INT
                args = " ".join(self.term(a, target, env) for a in term.args)
                return "(%s %s)" % (term.func, args)
            if not term.args:
                return term.func
            arg_sorts, _ = self.sig.functions[term.func]
            args = " ".join(self.term(a, s, env) for a, s in zip(term.args, arg_sorts))
            return "(%s %s)" % (term.func, args)
        raise SmtEmitError("unsupported term: %r" % (term,))


def _numeral(value, expected) -> str:
    if value < 0:
        return "(- %s)" % _numeral(-value, expected)
    if expected == S.REAL:
        if value.denominator == 1:
            return "%d.0" % value.numerator
        return "(/ %d %d)" % (value.numerator, value.denominator)
    return "%d" % value.numerator
