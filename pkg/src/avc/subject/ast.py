"""AST for the subject language (sl v1).

A small Python-like imperative language, just large enough to host the
programs under analysis: scalar/list/record/set values, assignment and
augmented assignment, if/elif/else, for-in loops, a handful of builtins,
`.get`/`.append` method sugar, single-expression lambdas (for count_if),
and extern function declarations resolved by the host at interpretation
time. Source positions never participate in equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional


@dataclass(frozen=True)
class Pos:
    line: int
    col: int

    def __str__(self):
        return "line %d, column %d" % (self.line, self.col)


def _pos_field():
    return field(default=None, compare=False, repr=False)


# --- Expressions ------------------------------------------------------------


@dataclass(frozen=True)
class NumLit:
    value: Fraction
    pos: Optional[Pos] = _pos_field()


@dataclass(frozen=True)
class StrLit:
    value: str
    pos: Optional[Pos] = _pos_field()


@dataclass(frozen=True)
class BoolLit:
    value: bool
    pos: Optional[Pos] = _pos_field()


@dataclass(frozen=True)
class Name:
    id: str
    pos: Optional[Pos] = _pos_field()


@dataclass(frozen=True)
class ListLit:
    items: tuple = ()
    pos: Optional[Pos] = _pos_field()


@dataclass(frozen=True)
class RecordLit:
    fields: tuple = ()  # ordered (key, expr) pairs
    pos: Optional[Pos] = _pos_field()


@dataclass(frozen=True)
class BinOp:
    # + - * and or in == != <= >= < >
    op: str
    lhs: object
    rhs: object
    pos: Optional[Pos] = _pos_field()


@dataclass(frozen=True)
class UnaryOp:
    op: str  # "not" | "-"
    operand: object
    pos: Optional[Pos] = _pos_field()


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple = ()
    pos: Optional[Pos] = _pos_field()


@dataclass(frozen=True)
class MethodCall:
    obj: object
    method: str  # "get" | "append"
    args: tuple = ()
    pos: Optional[Pos] = _pos_field()


@dataclass(frozen=True)
class Lambda:
    param: str
    body: object
    pos: Optional[Pos] = _pos_field()


LITERALS = (NumLit, StrLit, BoolLit)


# --- Statements -------------------------------------------------------------


@dataclass(frozen=True)
class Assign:
    target: str
    value: object
    aug: Optional[str] = None  # None | "+" | "-"
    pos: Optional[Pos] = _pos_field()


@dataclass(frozen=True)
class Return:
    value: object
    pos: Optional[Pos] = _pos_field()


@dataclass(frozen=True)
class If:
    # (condition, body) per if/elif arm, in source order.
    arms: tuple = ()
    orelse: Optional[tuple] = None
    pos: Optional[Pos] = _pos_field()


@dataclass(frozen=True)
class For:
    var: str
    iterable: object
    body: tuple = ()
    pos: Optional[Pos] = _pos_field()


@dataclass(frozen=True)
class ExprStmt:
    expr: object
    pos: Optional[Pos] = _pos_field()


# --- Top level --------------------------------------------------------------


@dataclass(frozen=True)
class FunctionDef:
    name: str
    params: tuple = ()
    body: tuple = ()
    pos: Optional[Pos] = _pos_field()


@dataclass(frozen=True)
class ExternDecl:
    name: str
    params: tuple = ()
    pos: Optional[Pos] = _pos_field()

    @property
    def arity(self) -> int:
        return len(self.params)


@dataclass(frozen=True)
class Program:
    const_decls: tuple = ()  # ordered (name, literal expr) pairs
    externs: tuple = ()      # ExternDecl
    functions: tuple = ()    # FunctionDef
    source_hash: str = field(default="", compare=False)

    def function(self, name) -> Optional[FunctionDef]:
        for fn in self.functions:
            if fn.name == name:
                return fn
        return None

    def extern(self, name) -> Optional[ExternDecl]:
        for ext in self.externs:
            if ext.name == name:
                return ext
        return None

    def const_value(self, name):
        for cname, lit in self.const_decls:
            if cname == name:
                return lit
        return None


def always_returns(body: tuple) -> bool:
    """True iff every path through the statement list reaches a return.
    for-loops never guarantee a return (the loop may run zero times)."""
    for stmt in body:
        if isinstance(stmt, Return):
            return True
        if isinstance(stmt, If) and stmt.orelse is not None:
            if all(always_returns(arm_body) for _, arm_body in stmt.arms) \
                    and always_returns(stmt.orelse):
                return True
    return False
