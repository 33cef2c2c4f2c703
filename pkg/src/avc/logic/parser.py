"""Recursive-descent parser for the formula grammar (formula-grammar v1).

See docs/formula-grammar.md for the EBNF. Parsing is signature-directed:
identifiers resolve to variables (via the quantifier environment), functions
or predicates, which is what disambiguates predicate applications from
term-valued applications.
"""

from __future__ import annotations

from .lexer import LexError, Token, tokenize
from . import syntax as S


class FormulaError(Exception):
    pass


class FormulaSyntaxError(FormulaError):
    def __init__(self, message, token):
        super().__init__(
            "%s (line %d, column %d)" % (message, token.line, token.col))
        self.line = token.line
        self.col = token.col


class FormulaValidationError(FormulaError):
    def __init__(self, diagnostics):
        super().__init__("; ".join(str(d) for d in diagnostics))
        self.diagnostics = list(diagnostics)


KEYWORDS = frozenset({"forall", "exists", "true", "false", "in"})
RELATIONS = frozenset({"==", "<=", "<"})


class FormulaParser:
    def __init__(self, tokens, sig, start=0):
        self.tokens = tokens
        self.sig = sig
        self.pos = start

    # -- token plumbing --

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def at_op(self, text) -> bool:
        tok = self.peek()
        return tok.kind == "OP" and tok.text == text

    def at_word(self, word) -> bool:
        tok = self.peek()
        return tok.kind == "IDENT" and tok.text == word

    def expect_op(self, text) -> Token:
        if not self.at_op(text):
            raise FormulaSyntaxError("expected '%s'" % text, self.peek())
        return self.next()

    def expect_ident(self, what="identifier") -> Token:
        tok = self.peek()
        if tok.kind != "IDENT":
            raise FormulaSyntaxError("expected %s" % what, tok)
        if tok.text in KEYWORDS:
            raise FormulaSyntaxError(
                "keyword '%s' cannot be used as %s" % (tok.text, what), tok)
        return self.next()

    # -- grammar --

    def parse_formula(self, env) -> S.Formula:
        return self._iff(env)

    def _iff(self, env):
        left = self._implies(env)
        while self.at_op("<->"):
            self.next()
            right = self._implies(env)
            left = S.Iff(left, right)
        return left

    def _implies(self, env):
        left = self._or(env)
        if self.at_op("->"):
            self.next()
            return S.Implies(left, self._implies(env))
        return left

    def _or(self, env):
        parts = [self._and(env)]
        while self.at_op("||"):
            self.next()
            parts.append(self._and(env))
        return parts[0] if len(parts) == 1 else S.Or(tuple(parts))

    def _and(self, env):
        parts = [self._unary(env)]
        while self.at_op("&&"):
            self.next()
            parts.append(self._unary(env))
        return parts[0] if len(parts) == 1 else S.And(tuple(parts))

    def _unary(self, env):
        if self.at_op("!"):
            self.next()
            return S.Not(self._unary(env))
        if self.at_word("forall") or self.at_word("exists"):
            return self._quantified(env)
        return self._atom(env)

    def _quantified(self, env):
        word = self.next().text
        var = self.expect_ident("bound variable")
        if var.text in self.sig.functions or var.text in self.sig.predicates:
            raise FormulaSyntaxError(
                "bound variable '%s' collides with a declared symbol" % var.text,
                var)
        self.expect_op(":")
        sort = self.expect_ident("sort name").text
        self.expect_op(".")
        body = self.parse_formula({**env, var.text: sort})
        ctor = S.Forall if word == "forall" else S.Exists
        return ctor(var.text, sort, body)

    def _atom(self, env):
        tok = self.peek()
        if self.at_word("true"):
            self.next()
            return S.TRUE
        if self.at_word("false"):
            self.next()
            return S.FALSE
        if tok.kind == "INFORMAL":
            self.next()
            return S.Informal(tok.value)
        if self.at_op("("):
            # Either a parenthesized formula or a parenthesized term followed
            # by a relation; speculate on the term reading first.
            save = self.pos
            try:
                return self._relation(env)
            except FormulaSyntaxError:
                self.pos = save
            self.next()
            inner = self.parse_formula(env)
            self.expect_op(")")
            return inner
        return self._relation(env)

    def _relation(self, env):
        operand = self._term(env, allow_predicate=True)
        if isinstance(operand, S.PredApp):
            if self._peek_relation():
                raise FormulaSyntaxError(
                    "predicate application cannot appear in a relation", self.peek())
            return operand
        tok = self.peek()
        if tok.kind == "OP" and tok.text in RELATIONS:
            self.next()
            rhs = self._term(env)
            if tok.text == "==":
                return S.Equals(operand, rhs)
            return S.Compare(tok.text, operand, rhs)
        if self.at_word("in"):
            self.next()
            return S.MemberOf(operand, self._literal_set())
        raise FormulaSyntaxError("expected '==', '<=', '<' or 'in' after term", tok)

    def _peek_relation(self):
        tok = self.peek()
        return (tok.kind == "OP" and tok.text in RELATIONS) or self.at_word("in")

    def _literal_set(self):
        self.expect_op("{")
        seen = []
        while True:
            tok = self.peek()
            if tok.kind != "STRING":
                raise FormulaSyntaxError("expected string literal in membership set", tok)
            self.next()
            if tok.value in seen:
                raise FormulaSyntaxError(
                    "duplicate literal %r in membership set" % tok.value, tok)
            seen.append(tok.value)
            if self.at_op(","):
                self.next()
                continue
            break
        self.expect_op("}")
        return tuple(seen)

    # -- terms --

    def _term(self, env, allow_predicate=False):
        left = self._mul(env, allow_predicate)
        if isinstance(left, S.PredApp):
            return left
        while self.at_op("+") or self.at_op("-"):
            op = self.next().text
            right = self._mul(env)
            left = S.Apply(op, (left, right))
        return left

    def _mul(self, env, allow_predicate=False):
        left = self._factor(env, allow_predicate)
        if isinstance(left, S.PredApp):
            return left
        while self.at_op("*"):
            self.next()
            right = self._factor(env)
            left = S.Apply("*", (left, right))
        return left

    def _factor(self, env, allow_predicate=False):
        tok = self.peek()
        if tok.kind == "NUM":
            self.next()
            return S.NumLit(tok.value)
        if self.at_op("-"):
            self.next()
            num = self.peek()
            if num.kind != "NUM":
                raise FormulaSyntaxError("expected numeric literal after '-'", num)
            self.next()
            return S.NumLit(-num.value)
        if tok.kind == "STRING":
            self.next()
            return S.StrLit(tok.value)
        if self.at_op("("):
            self.next()
            inner = self._term(env)
            self.expect_op(")")
            return inner
        if tok.kind == "IDENT" and tok.text not in KEYWORDS:
            return self._application(env, allow_predicate)
        raise FormulaSyntaxError("expected a term", tok)

    def _application(self, env, allow_predicate):
        name_tok = self.next()
        name = name_tok.text
        args = ()
        if self.at_op("("):
            self.next()
            collected = []
            if not self.at_op(")"):
                collected.append(self._term(env))
                while self.at_op(","):
                    self.next()
                    collected.append(self._term(env))
            self.expect_op(")")
            args = tuple(collected)
            if name in self.sig.predicates:
                if not allow_predicate:
                    raise FormulaSyntaxError(
                        "predicate '%s' used in term position" % name, name_tok)
                return S.PredApp(name, args)
            if name in self.sig.functions:
                return S.Apply(name, args)
            raise FormulaSyntaxError("undeclared symbol '%s'" % name, name_tok)
        if name in env:
            return S.Var(name, env[name])
        if name in self.sig.functions:
            return S.Apply(name, ())
        if name in self.sig.predicates:
            if not allow_predicate:
                raise FormulaSyntaxError(
                    "predicate '%s' used in term position" % name, name_tok)
            return S.PredApp(name, ())
        raise FormulaSyntaxError("undeclared symbol '%s'" % name, name_tok)


def parse_formula(text: str, sig: S.Signature) -> S.Formula:
    """Parses and validates a closed formula; raises FormulaSyntaxError with
    location or FormulaValidationError carrying well-formedness diagnostics."""
    try:
        tokens = tokenize(text)
    except LexError as exc:
        raise FormulaSyntaxError(
            exc.message, Token("EOF", "", None, exc.line, exc.col)) from exc
    parser = FormulaParser(tokens, sig)
    phi = parser.parse_formula({})
    trailing = parser.peek()
    if trailing.kind != "EOF":
        raise FormulaSyntaxError("unexpected trailing input", trailing)
    diagnostics = S.well_formed(sig, phi)
    if diagnostics:
        raise FormulaValidationError(diagnostics)
    return phi
