"""Rationale DSL (rationale v1): parser and canonical printer.

See docs/rationale-dsl.md. Declarations precede claims; claims precede
decompositions; the document ends with the root directive and an optional
subject reference. The canonical printer orders declarations and claims by
name, which parse_rationale treats the same as any other conforming order.
"""

from __future__ import annotations

from fractions import Fraction

from ..logic import syntax as S
from ..logic.lexer import LexError, tokenize
from ..logic.parser import FormulaParser, FormulaSyntaxError
from ..logic.syntax import format_number, escape_string
from .model import (
    Claim, Decomposition, Ident, Rationale, SubjectRef, VerifyHint,
    structural_diagnostics,
)


class RationaleError(Exception):
    pass


class RationaleSyntaxError(RationaleError):
    def __init__(self, message, line=None, col=None):
        if line is not None:
            message = "%s (line %d, column %d)" % (message, line, col)
        super().__init__(message)
        self.line = line
        self.col = col


class RationaleValidationError(RationaleError):
    def __init__(self, diagnostics):
        super().__init__("; ".join(str(d) for d in diagnostics))
        self.diagnostics = list(diagnostics)


class _Parser:
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
        raise RationaleSyntaxError(message, tok.line, tok.col)

    def at_word(self, word):
        tok = self.peek()
        return tok.kind == "IDENT" and tok.text == word

    def at_op(self, text):
        tok = self.peek()
        return tok.kind == "OP" and tok.text == text

    def expect_word(self, word):
        if not self.at_word(word):
            self.fail("expected '%s'" % word)
        return self.next()

    def expect_op(self, text):
        if not self.at_op(text):
            self.fail("expected '%s'" % text)
        return self.next()

    def expect_ident(self, what="identifier"):
        tok = self.peek()
        if tok.kind != "IDENT":
            self.fail("expected %s" % what)
        return self.next()

    def expect_string(self, what="string"):
        tok = self.peek()
        if tok.kind != "STRING":
            self.fail("expected %s" % what)
        return self.next()

    def glued(self, separators=("-",)):
        """Reads a run of IDENT/NUM tokens joined by the given operator
        characters with no intervening whitespace (hyphenated verifier
        names, hex digests)."""
        tok = self.peek()
        if tok.kind not in ("IDENT", "NUM"):
            self.fail("expected name")
        parts = [self.next()]
        while True:
            nxt = self.peek()
            prev = parts[-1]
            contiguous = (nxt.line == prev.line
                          and nxt.col == prev.col + len(prev.text))
            if not contiguous:
                break
            if nxt.kind in ("IDENT", "NUM"):
                parts.append(self.next())
            elif nxt.kind == "OP" and nxt.text in separators:
                parts.append(self.next())
            else:
                break
        return "".join(p.text for p in parts), parts[0]


def parse_rationale(text: str) -> Rationale:
    """Parses a rationale v1 document and checks all type invariants; raises
    RationaleSyntaxError (with location) or RationaleValidationError."""
    try:
        tokens = tokenize(text)
    except LexError as exc:
        raise RationaleSyntaxError(exc.message, exc.line, exc.col) from exc
    p = _Parser(tokens)

    p.expect_word("rationale")
    name = p.expect_ident("rationale name").text

    sorts = set()
    functions = {}
    predicates = {}
    declared = set()

    def declare(tok):
        if tok.text in declared:
            raise RationaleSyntaxError(
                "duplicate declaration of '%s'" % tok.text, tok.line, tok.col)
        declared.add(tok.text)

    while True:
        if p.at_word("sort"):
            p.next()
            tok = p.expect_ident("sort name")
            if tok.text in sorts or tok.text in S.BUILTIN_SORTS:
                raise RationaleSyntaxError(
                    "duplicate sort '%s'" % tok.text, tok.line, tok.col)
            sorts.add(tok.text)
        elif p.at_word("fn"):
            p.next()
            tok = p.expect_ident("function name")
            declare(tok)
            p.expect_op(":")
            head = [p.expect_ident("sort name").text]
            while p.at_op(","):
                p.next()
                head.append(p.expect_ident("sort name").text)
            if p.at_op("->"):
                p.next()
                result = p.expect_ident("result sort").text
                functions[tok.text] = (tuple(head), result)
            else:
                if len(head) != 1:
                    raise RationaleSyntaxError(
                        "constant '%s' cannot list argument sorts" % tok.text,
                        tok.line, tok.col)
                functions[tok.text] = ((), head[0])
        elif p.at_word("pred"):
            p.next()
            tok = p.expect_ident("predicate name")
            declare(tok)
            args = []
            if p.at_op(":"):
                p.next()
                args.append(p.expect_ident("sort name").text)
                while p.at_op(","):
                    p.next()
                    args.append(p.expect_ident("sort name").text)
            predicates[tok.text] = tuple(args)
        else:
            break

    sig = S.Signature(
        sorts=frozenset(sorts), functions=functions, predicates=predicates)

    claims = {}
    while p.at_word("claim"):
        p.next()
        id_tok = p.expect_ident("claim id")
        if id_tok.text in claims:
            raise RationaleSyntaxError(
                "duplicate claim id '%s'" % id_tok.text, id_tok.line, id_tok.col)
        title = p.expect_string("claim title").value
        p.expect_op("{")
        fields = {}
        while not p.at_op("}"):
            key_tok = p.expect_ident("claim field")
            key = key_tok.text
            if key not in ("formal", "informal", "verify", "note"):
                raise RationaleSyntaxError(
                    "unknown claim field '%s'" % key, key_tok.line, key_tok.col)
            if key in fields:
                raise RationaleSyntaxError(
                    "duplicate field '%s' in claim %s" % (key, id_tok.text),
                    key_tok.line, key_tok.col)
            p.expect_op(":")
            if key == "formal":
                fp = FormulaParser(p.tokens, sig, start=p.pos)
                try:
                    fields[key] = fp.parse_formula({})
                except FormulaSyntaxError as exc:
                    raise RationaleSyntaxError(
                        "claim %s: %s" % (id_tok.text, exc)) from exc
                p.pos = fp.pos
            elif key == "verify":
                fields[key] = _parse_hint(p)
            else:
                fields[key] = p.expect_string("quoted text").value
            if p.at_op(";"):
                p.next()
            elif not p.at_op("}"):
                p.fail("expected ';' or '}' after claim field")
        p.expect_op("}")
        try:
            claims[id_tok.text] = Claim(
                id=id_tok.text, title=title,
                formal=fields.get("formal"), informal=fields.get("informal"),
                verify=fields.get("verify"), note=fields.get("note"))
        except ValueError as exc:
            raise RationaleSyntaxError(str(exc), id_tok.line, id_tok.col) from exc

    decompositions = []
    while p.at_word("decompose"):
        p.next()
        parent = p.expect_ident("parent claim id").text
        p.expect_op("->")
        p.expect_op("[")
        children = [p.expect_ident("child claim id").text]
        while p.at_op(","):
            p.next()
            children.append(p.expect_ident("child claim id").text)
        p.expect_op("]")
        decompositions.append(Decomposition(parent, tuple(children)))

    p.expect_word("root")
    root = p.expect_ident("root claim id").text

    subject_ref = None
    if p.at_word("subject"):
        p.next()
        path = p.expect_string("subject path").value
        tag, tag_tok = p.glued()
        if tag != "sha256":
            raise RationaleSyntaxError(
                "expected sha256 digest tag", tag_tok.line, tag_tok.col)
        p.expect_op(":")
        digest, digest_tok = p.glued()
        if not all(c in "0123456789abcdef" for c in digest) or len(digest) != 64:
            raise RationaleSyntaxError(
                "malformed sha256 digest", digest_tok.line, digest_tok.col)
        subject_ref = SubjectRef(path, digest)

    if p.peek().kind != "EOF":
        p.fail("unexpected trailing input")

    r = Rationale(
        name=name, signature=sig, root=root, claims=claims,
        decompositions=tuple(decompositions), subject_ref=subject_ref)
    diagnostics = structural_diagnostics(r)
    if diagnostics:
        raise RationaleValidationError(diagnostics)
    return r


def _parse_hint(p: _Parser) -> VerifyHint:
    verifier, _ = p.glued()
    p.expect_op("(")
    config = []
    if not p.at_op(")"):
        config.append(_parse_kv(p))
        while p.at_op(","):
            p.next()
            config.append(_parse_kv(p))
    p.expect_op(")")
    return VerifyHint(verifier, tuple(config))


def _parse_kv(p: _Parser):
    key = p.expect_ident("hint key").text
    p.expect_op("=")
    tok = p.peek()
    if tok.kind == "IDENT":
        p.next()
        return key, Ident(tok.text)
    if tok.kind == "STRING":
        p.next()
        return key, tok.value
    if tok.kind == "NUM":
        p.next()
        return key, tok.value
    if p.at_op("{"):
        p.next()
        values = [p.expect_string("string literal").value]
        while p.at_op(","):
            p.next()
            values.append(p.expect_string("string literal").value)
        p.expect_op("}")
        return key, frozenset(values)
    if p.at_op("["):
        p.next()
        values = [p.expect_string("string literal").value]
        while p.at_op(","):
            p.next()
            values.append(p.expect_string("string literal").value)
        p.expect_op("]")
        return key, tuple(values)
    p.fail("expected a hint value")


# --- Printing ---------------------------------------------------------------


def _print_hint_value(value) -> str:
    if isinstance(value, Ident):
        return value.name
    if isinstance(value, str):
        return '"%s"' % escape_string(value)
    if isinstance(value, Fraction):
        return format_number(value)
    if isinstance(value, frozenset):
        return "{%s}" % ", ".join('"%s"' % escape_string(v) for v in sorted(value))
    if isinstance(value, tuple):
        return "[%s]" % ", ".join('"%s"' % escape_string(v) for v in value)
    raise TypeError("unsupported hint value: %r" % (value,))


def print_rationale(r: Rationale) -> str:
    """Canonical text form; parse_rationale(print_rationale(r)) == r."""
    lines = ["rationale %s" % r.name, ""]
    sig = r.signature
    for sort in sorted(sig.sorts):
        lines.append("sort %s" % sort)
    for fname in sorted(sig.functions):
        arg_sorts, result = sig.functions[fname]
        if arg_sorts:
            lines.append("fn %s : %s -> %s" % (fname, ", ".join(arg_sorts), result))
        else:
            lines.append("fn %s : %s" % (fname, result))
    for pname in sorted(sig.predicates):
        arg_sorts = sig.predicates[pname]
        if arg_sorts:
            lines.append("pred %s : %s" % (pname, ", ".join(arg_sorts)))
        else:
            lines.append("pred %s" % pname)
    lines.append("")

    for cid in sorted(r.claims):
        claim = r.claims[cid]
        lines.append('claim %s "%s" {' % (cid, escape_string(claim.title)))
        if claim.formal is not None:
            lines.append("  formal: %s;" % S.format_formula(claim.formal))
        else:
            lines.append('  informal: "%s";' % escape_string(claim.informal))
        if claim.verify is not None:
            args = ", ".join(
                "%s=%s" % (k, _print_hint_value(v)) for k, v in claim.verify.config)
            lines.append("  verify: %s(%s);" % (claim.verify.verifier, args))
        if claim.note is not None:
            lines.append('  note: "%s";' % escape_string(claim.note))
        lines.append("}")
    lines.append("")

    for d in r.decompositions:
        lines.append("decompose %s -> [%s]" % (d.parent, ", ".join(d.children)))
    lines.append("root %s" % r.root)
    if r.subject_ref is not None:
        lines.append('subject "%s" sha256:%s'
                     % (escape_string(r.subject_ref.path), r.subject_ref.sha256))
    return "\n".join(lines) + "\n"
