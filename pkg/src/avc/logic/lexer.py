"""Tokenizer shared by the formula grammar and the rationale DSL."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction


class LexError(Exception):
    def __init__(self, message, line, col):
        super().__init__("%s (line %d, column %d)" % (message, line, col))
        self.message = message
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Token:
    kind: str   # IDENT NUM STRING INFORMAL OP EOF
    text: str
    value: object
    line: int
    col: int


# Longest operators first so e.g. "<->" wins over "<-" fragments and "<=".
OPERATORS = [
    "<->", "->", "&&", "||", "<=", "==",
    "(", ")", "{", "}", "[", "]",
    ",", ".", ":", ";", "<", "!", "=", "+", "-", "*", "/",
]

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_NUM = re.compile(r"\d+(?:\.\d+)?(?:/\d+)?")


def _parse_number(text: str) -> Fraction:
    if "/" in text:
        num, den = text.split("/")
        return Fraction(int(num), int(den))
    if "." in text:
        whole, frac = text.split(".")
        return Fraction(int(whole) * 10 ** len(frac) + int(frac), 10 ** len(frac))
    return Fraction(int(text))


def tokenize(text: str) -> list:
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch == '"':
            value, consumed = _scan_string(text, i, line, col)
            tokens.append(Token("STRING", text[i:i + consumed], value, line, col))
            i += consumed
            col += consumed
            continue
        if ch == "`":
            end = text.find("`", i + 1)
            if end == -1 or "\n" in text[i + 1:end]:
                raise LexError("unterminated informal atom", line, col)
            tokens.append(Token("INFORMAL", text[i:end + 1], text[i + 1:end], line, col))
            col += end + 1 - i
            i = end + 1
            continue
        m = _NUM.match(text, i)
        if m:
            tokens.append(Token("NUM", m.group(), _parse_number(m.group()), line, col))
            col += len(m.group())
            i = m.end()
            continue
        m = _IDENT.match(text, i)
        if m:
            tokens.append(Token("IDENT", m.group(), m.group(), line, col))
            col += len(m.group())
            i = m.end()
            continue
        for op in OPERATORS:
            if text.startswith(op, i):
                tokens.append(Token("OP", op, op, line, col))
                i += len(op)
                col += len(op)
                break
        else:
            raise LexError("unexpected character %r" % ch, line, col)
    tokens.append(Token("EOF", "", None, line, col))
    return tokens


def _scan_string(text: str, start: int, line: int, col: int):
    # Double-quoted, escapes limited to \" and \\; no raw newlines.
    out = []
    i = start + 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == '"':
            return "".join(out), i + 1 - start
        if ch == "\n":
            break
        if ch == "\\":
            if i + 1 < n and text[i + 1] in ('"', "\\"):
                out.append(text[i + 1])
                i += 2
                continue
            raise LexError("unsupported escape in string literal", line, col)
        out.append(ch)
        i += 1
    raise LexError("unterminated string literal", line, col)
