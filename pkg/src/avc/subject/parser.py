"""Parser and canonical printer for the subject language (sl v1).

Python-like surface syntax with significant indentation. Programs are UTF-8
files (extension .sl); the program value records a SHA-256 of the raw source
bytes so downstream evidence can detect staleness.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass
from fractions import Fraction

from . import ast as A


class SLError(Exception):
    pass


class SLSyntaxError(SLError):
    def __init__(self, message, line=None, col=None):
        if line is not None:
            message = "%s (line %d, column %d)" % (message, line, col)
        super().__init__(message)
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Tok:
    kind: str  # NEWLINE INDENT DEDENT IDENT NUM STRING OP EOF
    text: str
    value: object
    line: int
    col: int


KEYWORDS = frozenset({
    "def", "extern", "return", "if", "elif", "else", "for", "in",
    "and", "or", "not", "lambda", "let", "True", "False",
})

_OPS = ["==", "!=", "<=", ">=", "+=", "-=",
        "(", ")", "[", "]", "{", "}", ",", ":", ".", "=", "<", ">", "+", "-", "*"]
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_NUM = re.compile(r"\d+(?:\.\d+)?")


def _scan_string(line_text, start, line_no):
    out = []
    i = start + 1
    while i < len(line_text):
        ch = line_text[i]
        if ch == '"':
            return "".join(out), i + 1 - start
        if ch == "\\":
            if i + 1 < len(line_text) and line_text[i + 1] in ('"', "\\"):
                out.append(line_text[i + 1])
                i += 2
                continue
            raise SLSyntaxError("unsupported escape in string literal", line_no, start + 1)
        out.append(ch)
        i += 1
    raise SLSyntaxError("unterminated string literal", line_no, start + 1)


def tokenize_sl(text: str) -> list:
    tokens = []
    indents = [0]
    for line_no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].rstrip()
        if not stripped.strip():
            continue
        indent = 0
        while indent < len(raw) and raw[indent] == " ":
            indent += 1
        if indent < len(raw) and raw[indent] == "\t":
            raise SLSyntaxError("tabs are not allowed in indentation", line_no, indent + 1)
        if indent > indents[-1]:
            indents.append(indent)
            tokens.append(Tok("INDENT", "", None, line_no, 1))
        else:
            while indent < indents[-1]:
                indents.pop()
                tokens.append(Tok("DEDENT", "", None, line_no, 1))
            if indent != indents[-1]:
                raise SLSyntaxError("inconsistent dedent", line_no, indent + 1)
        i = indent
        n = len(stripped)
        while i < n:
            ch = stripped[i]
            if ch == " ":
                i += 1
                continue
            col = i + 1
            if ch == '"':
                value, consumed = _scan_string(stripped, i, line_no)
                tokens.append(Tok("STRING", stripped[i:i + consumed], value, line_no, col))
                i += consumed
                continue
            m = _NUM.match(stripped, i)
            if m:
                value = Fraction(m.group()) if "." not in m.group() else _decimal(m.group())
                tokens.append(Tok("NUM", m.group(), value, line_no, col))
                i = m.end()
                continue
            m = _IDENT.match(stripped, i)
            if m:
                tokens.append(Tok("IDENT", m.group(), m.group(), line_no, col))
                i = m.end()
                continue
            for op in _OPS:
                if stripped.startswith(op, i):
                    tokens.append(Tok("OP", op, op, line_no, col))
                    i += len(op)
                    break
            else:
                raise SLSyntaxError("unexpected character %r" % ch, line_no, col)
        tokens.append(Tok("NEWLINE", "", None, line_no, len(stripped) + 1))
    last_line = tokens[-1].line + 1 if tokens else 1
    while len(indents) > 1:
        indents.pop()
        tokens.append(Tok("DEDENT", "", None, last_line, 1))
    tokens.append(Tok("EOF", "", None, last_line, 1))
    return tokens


def _decimal(text: str) -> Fraction:
    whole, frac = text.split(".")
    scale = 10 ** len(frac)
    return Fraction(int(whole) * scale + int(frac), scale)


class _SLParser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message):
        tok = self.peek()
        raise SLSyntaxError(message, tok.line, tok.col)

    def at(self, kind, text=None):
        tok = self.peek()
        return tok.kind == kind and (text is None or tok.text == text)

    def at_word(self, word):
        return self.at("IDENT", word)

    def expect(self, kind, text=None, what=None):
        if not self.at(kind, text):
            self.fail("expected %s" % (what or text or kind))
        return self.next()

    def expect_name(self, what="name"):
        tok = self.peek()
        if tok.kind != "IDENT" or tok.text in KEYWORDS:
            self.fail("expected %s" % what)
        return self.next()

    def pos_of(self, tok):
        return A.Pos(tok.line, tok.col)

    # -- top level --

    def parse_program(self, source_hash=""):
        consts = []
        externs = []
        functions = []
        names = set()

        def claim_name(tok):
            if tok.text in names:
                raise SLSyntaxError("duplicate name '%s'" % tok.text, tok.line, tok.col)
            names.add(tok.text)

        while not self.at("EOF"):
            if self.at("NEWLINE"):
                self.next()
                continue
            if self.at_word("extern"):
                self.next()
                tok = self.expect_name("extern name")
                claim_name(tok)
                self.expect("OP", "(")
                params = []
                if not self.at("OP", ")"):
                    params.append(self.expect_name("parameter").text)
                    while self.at("OP", ","):
                        self.next()
                        params.append(self.expect_name("parameter").text)
                self.expect("OP", ")")
                self.expect("NEWLINE")
                externs.append(A.ExternDecl(tok.text, tuple(params), pos=self.pos_of(tok)))
                continue
            if self.at_word("def"):
                functions.append(self.parse_function(claim_name))
                continue
            tok = self.expect_name("declaration")
            claim_name(tok)
            self.expect("OP", "=")
            lit = self.parse_literal()
            self.expect("NEWLINE")
            consts.append((tok.text, lit))
        return A.Program(
            const_decls=tuple(consts), externs=tuple(externs),
            functions=tuple(functions), source_hash=source_hash)

    def parse_literal(self):
        tok = self.peek()
        if tok.kind == "NUM":
            self.next()
            return A.NumLit(tok.value, pos=self.pos_of(tok))
        if tok.kind == "STRING":
            self.next()
            return A.StrLit(tok.value, pos=self.pos_of(tok))
        if self.at_word("True") or self.at_word("False"):
            self.next()
            return A.BoolLit(tok.text == "True", pos=self.pos_of(tok))
        if self.at("OP", "-"):
            self.next()
            num = self.expect("NUM", what="numeric literal")
            return A.NumLit(-num.value, pos=self.pos_of(tok))
        self.fail("expected a literal")

    def parse_function(self, claim_name):
        def_tok = self.expect("IDENT", "def")
        name_tok = self.expect_name("function name")
        claim_name(name_tok)
        self.expect("OP", "(")
        params = []
        if not self.at("OP", ")"):
            params.append(self.expect_name("parameter").text)
            while self.at("OP", ","):
                self.next()
                params.append(self.expect_name("parameter").text)
        self.expect("OP", ")")
        self.expect("OP", ":")
        body = self.parse_suite()
        if not A.always_returns(body):
            raise SLSyntaxError(
                "missing return path in function '%s'" % name_tok.text,
                name_tok.line, name_tok.col)
        return A.FunctionDef(
            name_tok.text, tuple(params), body, pos=self.pos_of(def_tok))

    # -- statements --

    def parse_suite(self):
        if self.at("NEWLINE"):
            self.next()
            self.expect("INDENT", what="an indented block")
            body = []
            while not self.at("DEDENT"):
                body.append(self.parse_statement())
            self.next()
            return tuple(body)
        stmt = self.parse_simple_statement()
        self.expect("NEWLINE")
        return (stmt,)

    def parse_statement(self):
        if self.at_word("if"):
            return self.parse_if()
        if self.at_word("for"):
            return self.parse_for()
        stmt = self.parse_simple_statement()
        self.expect("NEWLINE")
        return stmt

    def parse_if(self):
        if_tok = self.next()
        arms = []
        cond = self.parse_expr()
        self.expect("OP", ":")
        arms.append((cond, self.parse_suite()))
        orelse = None
        while self.at_word("elif"):
            self.next()
            cond = self.parse_expr()
            self.expect("OP", ":")
            arms.append((cond, self.parse_suite()))
        if self.at_word("else"):
            self.next()
            self.expect("OP", ":")
            orelse = self.parse_suite()
        return A.If(tuple(arms), orelse, pos=self.pos_of(if_tok))

    def parse_for(self):
        for_tok = self.next()
        var = self.expect_name("loop variable")
        self.expect("IDENT", "in")
        iterable = self.parse_expr()
        self.expect("OP", ":")
        body = self.parse_suite()
        return A.For(var.text, iterable, body, pos=self.pos_of(for_tok))

    def parse_simple_statement(self):
        tok = self.peek()
        if self.at_word("return"):
            self.next()
            return A.Return(self.parse_expr(), pos=self.pos_of(tok))
        if self.at_word("let"):
            self.next()
            target = self.expect_name("assignment target")
            self.expect("OP", "=")
            return A.Assign(target.text, self.parse_expr(), pos=self.pos_of(tok))
        if tok.kind == "IDENT" and tok.text not in KEYWORDS:
            nxt = self.tokens[self.pos + 1]
            if nxt.kind == "OP" and nxt.text in ("=", "+=", "-="):
                self.next()
                op = self.next().text
                aug = None if op == "=" else op[0]
                return A.Assign(tok.text, self.parse_expr(), aug=aug,
                                pos=self.pos_of(tok))
        expr = self.parse_expr()
        return A.ExprStmt(expr, pos=self.pos_of(tok))

    # -- expressions --

    COMPARISONS = ("==", "!=", "<=", ">=", "<", ">")

    def parse_expr(self):
        return self.parse_or()

    def parse_or(self):
        left = self.parse_and()
        while self.at_word("or"):
            tok = self.next()
            left = A.BinOp("or", left, self.parse_and(), pos=self.pos_of(tok))
        return left

    def parse_and(self):
        left = self.parse_not()
        while self.at_word("and"):
            tok = self.next()
            left = A.BinOp("and", left, self.parse_not(), pos=self.pos_of(tok))
        return left

    def parse_not(self):
        if self.at_word("not"):
            tok = self.next()
            return A.UnaryOp("not", self.parse_not(), pos=self.pos_of(tok))
        return self.parse_comparison()

    def parse_comparison(self):
        left = self.parse_arith()
        tok = self.peek()
        if tok.kind == "OP" and tok.text in self.COMPARISONS:
            self.next()
            return A.BinOp(tok.text, left, self.parse_arith(), pos=self.pos_of(tok))
        if self.at_word("in"):
            self.next()
            return A.BinOp("in", left, self.parse_arith(), pos=self.pos_of(tok))
        return left

    def parse_arith(self):
        left = self.parse_term()
        while self.at("OP", "+") or self.at("OP", "-"):
            tok = self.next()
            left = A.BinOp(tok.text, left, self.parse_term(), pos=self.pos_of(tok))
        return left

    def parse_term(self):
        left = self.parse_unary()
        while self.at("OP", "*"):
            tok = self.next()
            left = A.BinOp("*", left, self.parse_unary(), pos=self.pos_of(tok))
        return left

    def parse_unary(self):
        if self.at("OP", "-"):
            tok = self.next()
            return A.UnaryOp("-", self.parse_unary(), pos=self.pos_of(tok))
        return self.parse_postfix()

    def parse_postfix(self):
        expr = self.parse_primary()
        while self.at("OP", "."):
            dot = self.next()
            method = self.expect_name("method name")
            self.expect("OP", "(")
            args = self.parse_args()
            self.expect("OP", ")")
            expr = A.MethodCall(expr, method.text, args, pos=self.pos_of(dot))
        return expr

    def parse_args(self):
        args = []
        if not self.at("OP", ")"):
            args.append(self.parse_expr())
            while self.at("OP", ","):
                self.next()
                args.append(self.parse_expr())
        return tuple(args)

    def parse_primary(self):
        tok = self.peek()
        if tok.kind == "NUM":
            self.next()
            return A.NumLit(tok.value, pos=self.pos_of(tok))
        if tok.kind == "STRING":
            self.next()
            return A.StrLit(tok.value, pos=self.pos_of(tok))
        if self.at_word("True") or self.at_word("False"):
            self.next()
            return A.BoolLit(tok.text == "True", pos=self.pos_of(tok))
        if self.at_word("lambda"):
            self.next()
            param = self.expect_name("lambda parameter")
            self.expect("OP", ":")
            return A.Lambda(param.text, self.parse_expr(), pos=self.pos_of(tok))
        if tok.kind == "IDENT" and tok.text not in KEYWORDS:
            self.next()
            if self.at("OP", "("):
                self.next()
                args = self.parse_args()
                self.expect("OP", ")")
                return A.Call(tok.text, args, pos=self.pos_of(tok))
            return A.Name(tok.text, pos=self.pos_of(tok))
        if self.at("OP", "("):
            self.next()
            expr = self.parse_expr()
            self.expect("OP", ")")
            return expr
        if self.at("OP", "["):
            self.next()
            items = []
            if not self.at("OP", "]"):
                items.append(self.parse_expr())
                while self.at("OP", ","):
                    self.next()
                    items.append(self.parse_expr())
            self.expect("OP", "]")
            return A.ListLit(tuple(items), pos=self.pos_of(tok))
        if self.at("OP", "{"):
            self.next()
            fields = []
            if not self.at("OP", "}"):
                fields.append(self.parse_record_field())
                while self.at("OP", ","):
                    self.next()
                    fields.append(self.parse_record_field())
            self.expect("OP", "}")
            return A.RecordLit(tuple(fields), pos=self.pos_of(tok))
        self.fail("expected an expression")

    def parse_record_field(self):
        key = self.expect("STRING", what="record field name")
        self.expect("OP", ":")
        return key.value, self.parse_expr()


def parse_program(text: str) -> A.Program:
    """Parses sl v1 source; every function is checked for all-paths-return."""
    source_hash = hashlib.sha256(text.encode("utf-8")).hexdigest()
    tokens = tokenize_sl(text)
    return _SLParser(tokens).parse_program(source_hash)


# --- Printing ---------------------------------------------------------------

_LEVELS = {
    "or": 1, "and": 2,
    "==": 4, "!=": 4, "<=": 4, ">=": 4, "<": 4, ">": 4, "in": 4,
    "+": 5, "-": 5, "*": 6,
}


def format_expr(expr, minimum=0) -> str:
    if isinstance(expr, A.NumLit):
        # Parsed expressions never hold negative literals (unary minus is an
        # operator node); negative values only appear in const declarations.
        value = expr.value
        if value.denominator == 1:
            return str(value.numerator)
        den = value.denominator
        for p in (2, 5):
            while den % p == 0:
                den //= p
        if den != 1:
            raise ValueError("numeric literal %s is not decimal-representable" % value)
        scaled = value
        digits = 0
        while scaled.denominator != 1:
            scaled *= 10
            digits += 1
        body = str(abs(scaled.numerator)).rjust(digits + 1, "0")
        return "%s%s.%s" % ("-" if value < 0 else "", body[:-digits], body[-digits:])
    if isinstance(expr, A.StrLit):
        return '"%s"' % expr.value.replace("\\", "\\\\").replace('"', '\\"')
    if isinstance(expr, A.BoolLit):
        return "True" if expr.value else "False"
    if isinstance(expr, A.Name):
        return expr.id
    if isinstance(expr, A.ListLit):
        return "[%s]" % ", ".join(format_expr(i) for i in expr.items)
    if isinstance(expr, A.RecordLit):
        inner = ", ".join(
            '"%s": %s' % (k.replace("\\", "\\\\").replace('"', '\\"'), format_expr(v))
            for k, v in expr.fields)
        return "{%s}" % inner
    if isinstance(expr, A.BinOp):
        level = _LEVELS[expr.op]
        if level == 4:  # comparisons are non-associative
            text = "%s %s %s" % (
                format_expr(expr.lhs, 5), expr.op, format_expr(expr.rhs, 5))
        else:
            text = "%s %s %s" % (
                format_expr(expr.lhs, level), expr.op, format_expr(expr.rhs, level + 1))
        return _wrap(text, level, minimum)
    if isinstance(expr, A.UnaryOp):
        if expr.op == "not":
            return _wrap("not %s" % format_expr(expr.operand, 3), 3, minimum)
        return _wrap("-%s" % format_expr(expr.operand, 7), 7, minimum)
    if isinstance(expr, A.Call):
        return "%s(%s)" % (expr.func, ", ".join(format_expr(a) for a in expr.args))
    if isinstance(expr, A.MethodCall):
        return "%s.%s(%s)" % (
            format_expr(expr.obj, 8), expr.method,
            ", ".join(format_expr(a) for a in expr.args))
    if isinstance(expr, A.Lambda):
        text = "lambda %s: %s" % (expr.param, format_expr(expr.body))
        # The body extends maximally right; safe bare only where delimited.
        return text if minimum == 0 else "(%s)" % text
    raise TypeError("not an expression: %r" % (expr,))


def _wrap(text, level, minimum):
    if level < minimum:
        return "(%s)" % text
    return text


def _format_block(body, indent) -> list:
    pad = "    " * indent
    lines = []
    for stmt in body:
        if isinstance(stmt, A.Assign):
            op = "%s=" % (stmt.aug or "")
            lines.append("%s%s %s %s" % (pad, stmt.target, op, format_expr(stmt.value)))
        elif isinstance(stmt, A.Return):
            lines.append("%sreturn %s" % (pad, format_expr(stmt.value)))
        elif isinstance(stmt, A.ExprStmt):
            lines.append("%s%s" % (pad, format_expr(stmt.expr)))
        elif isinstance(stmt, A.If):
            for i, (cond, arm_body) in enumerate(stmt.arms):
                word = "if" if i == 0 else "elif"
                lines.append("%s%s %s:" % (pad, word, format_expr(cond)))
                lines.extend(_format_block(arm_body, indent + 1))
            if stmt.orelse is not None:
                lines.append("%selse:" % pad)
                lines.extend(_format_block(stmt.orelse, indent + 1))
        elif isinstance(stmt, A.For):
            lines.append("%sfor %s in %s:" % (pad, stmt.var, format_expr(stmt.iterable)))
            lines.extend(_format_block(stmt.body, indent + 1))
        else:
            raise TypeError("not a statement: %r" % (stmt,))
    return lines


def print_program(prog: A.Program) -> str:
    """Canonical source form; parse_program(print_program(p)) equals p up to
    source positions and hash."""
    lines = []
    for name, lit in prog.const_decls:
        lines.append("%s = %s" % (name, format_expr(lit)))
    if prog.const_decls:
        lines.append("")
    for ext in prog.externs:
        lines.append("extern %s(%s)" % (ext.name, ", ".join(ext.params)))
    if prog.externs:
        lines.append("")
    for i, fn in enumerate(prog.functions):
        if i:
            lines.append("")
        lines.append("def %s(%s):" % (fn.name, ", ".join(fn.params)))
        lines.extend(_format_block(fn.body, 1))
    return "\n".join(lines) + "\n"
