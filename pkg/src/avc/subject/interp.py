"""Reference interpreter for the subject language.

Big-step tree-walking evaluation with exact rational numbers; the reference
oracle the static analyzers are tested against. Extern functions are host
callbacks supplied by the caller; the interpreter is deterministic given the
callbacks' behavior.

Value mapping: Num -> fractions.Fraction, Str -> str, Bool -> bool,
ListOf -> list, RecordOf -> dict (string keys), SetOf -> set.
"""

from __future__ import annotations

from fractions import Fraction

from . import ast as A
from .parser import SLError


class SLRuntimeError(SLError):
    def __init__(self, message, pos=None):
        if pos is not None:
            message = "%s (%s)" % (message, pos)
        super().__init__(message)
        self.pos = pos


class _Return(Exception):
    def __init__(self, value):
        self.value = value


class _Closure:
    def __init__(self, lam, env, interp):
        self.lam = lam
        self.env = env
        self.interp = interp

    def __call__(self, value):
        scope = dict(self.env)
        scope[self.lam.param] = value
        return self.interp.eval(self.lam.body, scope)


def coerce_value(value, pos=None):
    """Normalizes host-supplied values into interpreter values."""
    if isinstance(value, bool) or isinstance(value, (Fraction, str)):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value).limit_denominator(10 ** 9)
    if isinstance(value, (list, tuple)):
        return [coerce_value(v, pos) for v in value]
    if isinstance(value, dict):
        return {k: coerce_value(v, pos) for k, v in value.items()}
    if isinstance(value, (set, frozenset)):
        return {coerce_value(v, pos) for v in value}
    raise SLRuntimeError("unsupported extern result %r" % (value,), pos)


def _type_name(value):
    if isinstance(value, bool):
        return "Bool"
    if isinstance(value, Fraction):
        return "Num"
    if isinstance(value, str):
        return "Str"
    if isinstance(value, list):
        return "List"
    if isinstance(value, dict):
        return "Record"
    if isinstance(value, set):
        return "Set"
    return type(value).__name__


def round_half_away(value: Fraction, ndigits: int) -> Fraction:
    """round(x, n) with ties away from zero, exactly."""
    scale = Fraction(10) ** ndigits
    scaled = value * scale
    sign = -1 if scaled < 0 else 1
    magnitude = abs(scaled)
    whole = magnitude.numerator // magnitude.denominator
    if magnitude - whole >= Fraction(1, 2):
        whole += 1
    return Fraction(sign * whole) / scale


class Interpreter:
    def __init__(self, prog: A.Program, externs=None):
        self.prog = prog
        self.externs = dict(externs or {})
        for ext in prog.externs:
            if ext.name not in self.externs:
                raise SLRuntimeError(
                    "no callback provided for extern '%s'" % ext.name)
        self.globals = {}
        for name, lit in prog.const_decls:
            self.globals[name] = self.eval(lit, {})

    def call(self, name, args):
        fn = self.prog.function(name)
        if fn is None:
            raise SLRuntimeError("unknown function '%s'" % name)
        if len(args) != len(fn.params):
            raise SLRuntimeError(
                "function '%s' expects %d arguments, got %d"
                % (name, len(fn.params), len(args)))
        env = dict(self.globals)
        env.update(zip(fn.params, (coerce_value(a) for a in args)))
        try:
            self.exec_block(fn.body, env)
        except _Return as ret:
            return ret.value
        raise SLRuntimeError("function '%s' did not return" % name, fn.pos)

    # -- statements --

    def exec_block(self, body, env):
        for stmt in body:
            self.exec_stmt(stmt, env)

    def exec_stmt(self, stmt, env):
        if isinstance(stmt, A.Assign):
            value = self.eval(stmt.value, env)
            if stmt.aug is not None:
                current = self._lookup(stmt.target, env, stmt.pos)
                value = self._arith(stmt.aug, current, value, stmt.pos)
            env[stmt.target] = value
            return
        if isinstance(stmt, A.Return):
            raise _Return(self.eval(stmt.value, env))
        if isinstance(stmt, A.ExprStmt):
            self.eval(stmt.expr, env)
            return
        if isinstance(stmt, A.If):
            for cond, body in stmt.arms:
                if self._truth(self.eval(cond, env), stmt.pos):
                    self.exec_block(body, env)
                    return
            if stmt.orelse is not None:
                self.exec_block(stmt.orelse, env)
            return
        if isinstance(stmt, A.For):
            iterable = self.eval(stmt.iterable, env)
            if not isinstance(iterable, list):
                raise SLRuntimeError(
                    "for-loop requires a list, got %s" % _type_name(iterable),
                    stmt.pos)
            for item in iterable:
                env[stmt.var] = item
                self.exec_block(stmt.body, env)
            return
        raise TypeError("not a statement: %r" % (stmt,))

    # -- expressions --

    def eval(self, expr, env):
        if isinstance(expr, A.NumLit):
            return expr.value
        if isinstance(expr, A.StrLit):
            return expr.value
        if isinstance(expr, A.BoolLit):
            return expr.value
        if isinstance(expr, A.Name):
            return self._lookup(expr.id, env, expr.pos)
        if isinstance(expr, A.ListLit):
            return [self.eval(i, env) for i in expr.items]
        if isinstance(expr, A.RecordLit):
            return {k: self.eval(v, env) for k, v in expr.fields}
        if isinstance(expr, A.Lambda):
            return _Closure(expr, env, self)
        if isinstance(expr, A.UnaryOp):
            if expr.op == "not":
                return not self._truth(self.eval(expr.operand, env), expr.pos)
            value = self.eval(expr.operand, env)
            if not isinstance(value, Fraction) or isinstance(value, bool):
                raise SLRuntimeError(
                    "unary '-' requires Num, got %s" % _type_name(value), expr.pos)
            return -value
        if isinstance(expr, A.BinOp):
            return self._binop(expr, env)
        if isinstance(expr, A.Call):
            return self._call(expr, env)
        if isinstance(expr, A.MethodCall):
            return self._method(expr, env)
        raise TypeError("not an expression: %r" % (expr,))

    def _lookup(self, name, env, pos):
        if name in env:
            return env[name]
        raise SLRuntimeError("undefined variable '%s'" % name, pos)

    def _truth(self, value, pos):
        if not isinstance(value, bool):
            raise SLRuntimeError(
                "condition must be Bool, got %s" % _type_name(value), pos)
        return value

    def _num(self, value, pos, what="operand"):
        if isinstance(value, bool) or not isinstance(value, Fraction):
            raise SLRuntimeError(
                "%s must be Num, got %s" % (what, _type_name(value)), pos)
        return value

    def _arith(self, op, lhs, rhs, pos):
        lhs = self._num(lhs, pos)
        rhs = self._num(rhs, pos)
        if op == "+":
            return lhs + rhs
        if op == "-":
            return lhs - rhs
        return lhs * rhs

    def _binop(self, expr, env):
        op = expr.op
        if op == "and":
            if not self._truth(self.eval(expr.lhs, env), expr.pos):
                return False
            return self._truth(self.eval(expr.rhs, env), expr.pos)
        if op == "or":
            if self._truth(self.eval(expr.lhs, env), expr.pos):
                return True
            return self._truth(self.eval(expr.rhs, env), expr.pos)
        lhs = self.eval(expr.lhs, env)
        rhs = self.eval(expr.rhs, env)
        if op in ("+", "-", "*"):
            return self._arith(op, lhs, rhs, expr.pos)
        if op == "in":
            if isinstance(rhs, (list, set)):
                return lhs in rhs
            raise SLRuntimeError(
                "'in' requires a list or set, got %s" % _type_name(rhs), expr.pos)
        if op in ("==", "!="):
            equal = type(lhs) is type(rhs) and lhs == rhs
            if isinstance(lhs, Fraction) and isinstance(rhs, Fraction):
                equal = lhs == rhs
            return equal if op == "==" else not equal
        if op in ("<=", ">=", "<", ">"):
            lhs = self._num(lhs, expr.pos)
            rhs = self._num(rhs, expr.pos)
            if op == "<=":
                return lhs <= rhs
            if op == ">=":
                return lhs >= rhs
            if op == "<":
                return lhs < rhs
            return lhs > rhs
        raise TypeError("unknown operator %r" % op)

    def _call(self, expr, env):
        name = expr.func
        args = [self.eval(a, env) for a in expr.args]
        if name == "len":
            self._arity(expr, args, 1)
            if not isinstance(args[0], (list, str, set)):
                raise SLRuntimeError(
                    "len requires List, Str or Set, got %s" % _type_name(args[0]),
                    expr.pos)
            return Fraction(len(args[0]))
        if name in ("min", "max"):
            if len(args) < 2:
                raise SLRuntimeError("%s requires at least 2 arguments" % name, expr.pos)
            nums = [self._num(a, expr.pos, "%s argument" % name) for a in args]
            return min(nums) if name == "min" else max(nums)
        if name == "round":
            self._arity(expr, args, 2)
            value = self._num(args[0], expr.pos, "round argument")
            ndigits = self._num(args[1], expr.pos, "round digits")
            if ndigits.denominator != 1:
                raise SLRuntimeError("round digits must be an integer", expr.pos)
            return round_half_away(value, int(ndigits))
        if name == "count_if":
            self._arity(expr, args, 2)
            items, pred = args
            if not isinstance(items, list):
                raise SLRuntimeError(
                    "count_if requires a list, got %s" % _type_name(items), expr.pos)
            if not isinstance(pred, _Closure):
                raise SLRuntimeError("count_if requires a lambda predicate", expr.pos)
            count = 0
            for item in items:
                verdict = pred(item)
                if not isinstance(verdict, bool):
                    raise SLRuntimeError(
                        "count_if predicate must return Bool, got %s"
                        % _type_name(verdict), expr.pos)
                if verdict:
                    count += 1
            return Fraction(count)
        if name == "set":
            self._arity(expr, args, 1)
            if not isinstance(args[0], list):
                raise SLRuntimeError(
                    "set requires a list, got %s" % _type_name(args[0]), expr.pos)
            for item in args[0]:
                if not isinstance(item, (Fraction, str, bool)):
                    raise SLRuntimeError(
                        "set elements must be Num, Str or Bool, got %s"
                        % _type_name(item), expr.pos)
            return set(args[0])
        ext = self.prog.extern(name)
        if ext is not None:
            if len(args) != ext.arity:
                raise SLRuntimeError(
                    "extern '%s' expects %d arguments, got %d"
                    % (name, ext.arity, len(args)), expr.pos)
            return coerce_value(self.externs[name](*args), expr.pos)
        if self.prog.function(name) is not None:
            return self.call(name, args)
        raise SLRuntimeError("unknown function '%s'" % name, expr.pos)

    def _arity(self, expr, args, n):
        if len(args) != n:
            raise SLRuntimeError(
                "%s expects %d arguments, got %d" % (expr.func, n, len(args)),
                expr.pos)

    def _method(self, expr, env):
        obj = self.eval(expr.obj, env)
        args = [self.eval(a, env) for a in expr.args]
        if expr.method == "get":
            if not isinstance(obj, dict):
                raise SLRuntimeError(
                    ".get requires a record, got %s" % _type_name(obj), expr.pos)
            if len(args) not in (1, 2):
                raise SLRuntimeError(".get expects 1 or 2 arguments", expr.pos)
            key = args[0]
            if not isinstance(key, str):
                raise SLRuntimeError(
                    "record field name must be Str, got %s" % _type_name(key),
                    expr.pos)
            if key in obj:
                return obj[key]
            if len(args) == 2:
                return args[1]
            raise SLRuntimeError("missing record field '%s'" % key, expr.pos)
        if expr.method == "append":
            if not isinstance(obj, list):
                raise SLRuntimeError(
                    ".append requires a list, got %s" % _type_name(obj), expr.pos)
            if len(args) != 1:
                raise SLRuntimeError(".append expects 1 argument", expr.pos)
            obj.append(args[0])
            return obj
        raise SLRuntimeError("unknown method '%s'" % expr.method, expr.pos)


def interpret(prog: A.Program, function: str, args, externs=None):
    """Evaluates prog.function(*args) with the given extern callbacks."""
    return Interpreter(prog, externs).call(function, args)


def extract_constants(prog: A.Program) -> dict:
    """Top-level and function-local bindings whose right-hand side is a
    scalar literal and which are never rebound; maps name -> Python value."""
    out = {}
    for name, lit in prog.const_decls:
        out[name] = lit.value
    for fn in prog.functions:
        counts = {}
        firsts = {}
        _count_assignments(fn.body, counts, firsts)
        for name, count in counts.items():
            if count != 1 or name in out or name in fn.params:
                continue
            lit = firsts[name]
            if isinstance(lit, A.LITERALS):
                out[name] = lit.value
    return out


def _count_assignments(body, counts, firsts):
    for stmt in body:
        if isinstance(stmt, A.Assign):
            counts[stmt.target] = counts.get(stmt.target, 0) + 1
            if stmt.target not in firsts and stmt.aug is None:
                firsts[stmt.target] = stmt.value
        elif isinstance(stmt, A.If):
            for _, arm_body in stmt.arms:
                _count_assignments(arm_body, counts, firsts)
            if stmt.orelse is not None:
                _count_assignments(stmt.orelse, counts, firsts)
        elif isinstance(stmt, A.For):
            counts[stmt.var] = counts.get(stmt.var, 0) + 2  # loop var rebinds
            _count_assignments(stmt.body, counts, firsts)
