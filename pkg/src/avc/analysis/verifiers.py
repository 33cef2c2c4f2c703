"""Static verifiers that attempt to discharge leaf conjectures.

Verified is only ever issued by sound reasoning (abstract dataflow over the
function body, syntactic pattern matching, or exact constant arithmetic);
grid sampling can only refute or leave a conjecture open.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from ..logic import syntax as S
from ..subject import ast as A
from ..subject.interp import Interpreter, extract_constants
from .domain import (
    TOP, AnyNum, AnyStr, EnumStr, ExactNum, ListOfStrLits, RecordShape,
    StrLits, Top, join,
)


class AnalysisError(Exception):
    pass


class EvidenceStatus(enum.Enum):
    VERIFIED = "verified"
    REFUTED = "refuted"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Evidence:
    claim_id: str
    verifier: str
    status: EvidenceStatus
    details: dict = field(default_factory=dict)
    subject_hash: str = ""


def _require_function(prog: A.Program, name: str) -> A.FunctionDef:
    fn = prog.function(name)
    if fn is None:
        raise AnalysisError("unknown function '%s'" % name)
    return fn


# --- List content summaries (flow-insensitive, alias-guarded) ---------------


@dataclass
class ListSummary:
    literals: set = field(default_factory=set)
    unknown: bool = False    # a non-literal element may be present
    initialized: bool = False
    corrupt: bool = False    # rebound to a non-list value; no longer a list


_SAFE_LIST_CALLS = frozenset({"len", "count_if", "set", "min", "max", "round"})


def list_summaries(prog: A.Program, fn: A.FunctionDef) -> dict:
    """Per-variable over-approximation of list contents across all paths.
    Appends inside loops count once (set semantics). A variable stops being
    trackable if it is rebound to a non-list-literal, aliased, or passed to
    a call that may retain or mutate it; appends through non-name receivers
    poison every summary."""
    summaries: dict = {}
    poison_all = [False]

    def summary(name):
        return summaries.setdefault(name, ListSummary())

    def mark_escaped(name):
        s = summary(name)
        s.unknown = True

    def walk_expr(expr, consumer_safe=False):
        # consumer_safe: the direct consumer cannot retain or mutate the value.
        if isinstance(expr, A.Name):
            if expr.id in summaries and not consumer_safe:
                mark_escaped(expr.id)
            return
        if isinstance(expr, (A.NumLit, A.StrLit, A.BoolLit)):
            return
        if isinstance(expr, A.ListLit):
            for item in expr.items:
                walk_expr(item)
            return
        if isinstance(expr, A.RecordLit):
            for _, value in expr.fields:
                walk_expr(value, consumer_safe=True)
            return
        if isinstance(expr, A.BinOp):
            # Membership/comparison reads do not retain the list.
            walk_expr(expr.lhs, consumer_safe=True)
            walk_expr(expr.rhs, consumer_safe=True)
            return
        if isinstance(expr, A.UnaryOp):
            walk_expr(expr.operand, consumer_safe=True)
            return
        if isinstance(expr, A.Lambda):
            walk_expr(expr.body, consumer_safe=True)
            return
        if isinstance(expr, A.Call):
            safe = expr.func in _SAFE_LIST_CALLS
            for arg in expr.args:
                walk_expr(arg, consumer_safe=safe)
            return
        if isinstance(expr, A.MethodCall):
            walk_expr(expr.obj, consumer_safe=True)
            for arg in expr.args:
                walk_expr(arg, consumer_safe=True)
            return
        raise TypeError("not an expression: %r" % (expr,))

    def walk_stmt(stmt):
        if isinstance(stmt, A.Assign):
            if stmt.aug is None and isinstance(stmt.value, A.ListLit):
                s = summary(stmt.target)
                if s.initialized:
                    # Rebinding resets nothing soundly; keep the union.
                    s.unknown = s.unknown or _list_lit_unknown(stmt.value)
                    s.literals |= _list_lit_literals(stmt.value)
                else:
                    s.initialized = True
                    s.unknown = _list_lit_unknown(stmt.value)
                    s.literals |= _list_lit_literals(stmt.value)
                for item in stmt.value.items:
                    walk_expr(item)
                return
            if isinstance(stmt.value, A.Name) and stmt.value.id in summaries:
                # Alias created: appends through either name escape the
                # other's summary, and the target starts with unknown content.
                mark_escaped(stmt.value.id)
                target = summary(stmt.target)
                target.unknown = True
            else:
                if stmt.target in summaries:
                    # Rebound to something that is not a list literal.
                    summaries[stmt.target].unknown = True
                    summaries[stmt.target].corrupt = True
                walk_expr(stmt.value)
            return
        if isinstance(stmt, A.Return):
            walk_expr(stmt.value, consumer_safe=True)
            return
        if isinstance(stmt, A.ExprStmt):
            expr = stmt.expr
            if (isinstance(expr, A.MethodCall) and expr.method == "append"):
                if isinstance(expr.obj, A.Name):
                    s = summary(expr.obj.id)
                    arg = expr.args[0] if expr.args else None
                    if isinstance(arg, A.StrLit):
                        s.literals.add(arg.value)
                    else:
                        s.unknown = True
                        if arg is not None:
                            walk_expr(arg)
                    return
                poison_all[0] = True
                walk_expr(expr.obj, consumer_safe=True)
                return
            walk_expr(expr)
            return
        if isinstance(stmt, A.If):
            for cond, body in stmt.arms:
                walk_expr(cond, consumer_safe=True)
                for inner in body:
                    walk_stmt(inner)
            if stmt.orelse is not None:
                for inner in stmt.orelse:
                    walk_stmt(inner)
            return
        if isinstance(stmt, A.For):
            walk_expr(stmt.iterable, consumer_safe=True)
            for inner in stmt.body:
                walk_stmt(inner)
            return
        raise TypeError("not a statement: %r" % (stmt,))

    for stmt in fn.body:
        walk_stmt(stmt)
    if poison_all[0]:
        for s in summaries.values():
            s.unknown = True
    return {name: s for name, s in summaries.items() if s.initialized or s.literals or s.unknown}


def _list_lit_literals(lit: A.ListLit) -> set:
    return {i.value for i in lit.items if isinstance(i, A.StrLit)}


def _list_lit_unknown(lit: A.ListLit) -> bool:
    return any(not isinstance(i, A.StrLit) for i in lit.items)


# --- Abstract interpreter (for the output-shape verifier) -------------------

_LOOP_CAP = 100


class _AbstractEval:
    def __init__(self, prog: A.Program, fn: A.FunctionDef):
        self.prog = prog
        self.fn = fn
        self.lists = list_summaries(prog, fn)
        self.returns = []  # (abstract value, position)

    def list_value(self, name):
        s = self.lists.get(name)
        if s is None or s.corrupt:
            return TOP
        return ListOfStrLits(frozenset(s.literals), s.unknown)

    def run(self):
        env = {}
        for cname, lit in self.prog.const_decls:
            env[cname] = self.eval(lit, env)
        for param in self.fn.params:
            env[param] = TOP
        self.block(self.fn.body, env)
        return self.returns

    def block(self, body, env):
        for stmt in body:
            self.stmt(stmt, env)

    def stmt(self, stmt, env):
        if isinstance(stmt, A.Assign):
            value = self.eval(stmt.value, env)
            if stmt.aug is not None:
                current = env.get(stmt.target, TOP)
                value = self._arith(current, value)
            if stmt.target in self.lists:
                value = self.list_value(stmt.target)
            env[stmt.target] = value
            return
        if isinstance(stmt, A.Return):
            self.returns.append((self.eval(stmt.value, env), stmt.pos))
            return
        if isinstance(stmt, A.ExprStmt):
            self.eval(stmt.expr, env)
            return
        if isinstance(stmt, A.If):
            branches = []
            for cond, body in stmt.arms:
                self.eval(cond, env)
                scope = dict(env)
                self.block(body, scope)
                branches.append(scope)
            if stmt.orelse is not None:
                scope = dict(env)
                self.block(stmt.orelse, scope)
                branches.append(scope)
            else:
                branches.append(dict(env))  # fall-through path
            merged = branches[0]
            for other in branches[1:]:
                merged = _join_env(merged, other)
            env.clear()
            env.update(merged)
            return
        if isinstance(stmt, A.For):
            iterable = self.eval(stmt.iterable, env)
            element = TOP
            if isinstance(iterable, ListOfStrLits):
                if iterable.may_contain_unknown or not iterable.values:
                    element = TOP
                else:
                    element = StrLits(iterable.values)
            for _ in range(_LOOP_CAP):
                scope = dict(env)
                scope[stmt.var] = element
                self.block(stmt.body, scope)
                scope.pop(stmt.var, None)
                merged = _join_env(env, scope)
                if merged == env:
                    return
                env.clear()
                env.update(merged)
            for name in list(env):
                env[name] = TOP
            return
        raise TypeError("not a statement: %r" % (stmt,))

    def eval(self, expr, env):
        if isinstance(expr, A.NumLit):
            return ExactNum(expr.value)
        if isinstance(expr, A.StrLit):
            return StrLits(frozenset({expr.value}))
        if isinstance(expr, A.BoolLit):
            return TOP
        if isinstance(expr, A.Name):
            if expr.id in self.lists:
                return self.list_value(expr.id)
            return env.get(expr.id, TOP)
        if isinstance(expr, A.ListLit):
            values = set()
            unknown = False
            for item in expr.items:
                av = self.eval(item, env)
                if isinstance(av, StrLits):
                    values |= av.values
                else:
                    unknown = True
            return ListOfStrLits(frozenset(values), unknown)
        if isinstance(expr, A.RecordLit):
            return RecordShape(tuple(
                (key, self.eval(value, env)) for key, value in expr.fields))
        if isinstance(expr, A.Lambda):
            return TOP
        if isinstance(expr, A.UnaryOp):
            inner = self.eval(expr.operand, env)
            if expr.op == "-":
                if isinstance(inner, ExactNum):
                    return ExactNum(-inner.value)
                return AnyNum()
            return TOP
        if isinstance(expr, A.BinOp):
            lhs = self.eval(expr.lhs, env)
            rhs = self.eval(expr.rhs, env)
            if expr.op in ("+", "-", "*"):
                if isinstance(lhs, ExactNum) and isinstance(rhs, ExactNum):
                    value = {
                        "+": lhs.value + rhs.value,
                        "-": lhs.value - rhs.value,
                        "*": lhs.value * rhs.value,
                    }[expr.op]
                    return ExactNum(value)
                return self._arith(lhs, rhs)
            return TOP
        if isinstance(expr, A.Call):
            args = [self.eval(a, env) for a in expr.args]
            if expr.func in ("len", "count_if", "round"):
                return AnyNum()
            if expr.func in ("min", "max"):
                if args and all(isinstance(a, ExactNum) for a in args):
                    values = [a.value for a in args]
                    return ExactNum(min(values) if expr.func == "min" else max(values))
                return AnyNum()
            return TOP  # set(), externs, user functions
        if isinstance(expr, A.MethodCall):
            self.eval(expr.obj, env)
            for arg in expr.args:
                self.eval(arg, env)
            return TOP  # .get on unknown records; .append handled as ExprStmt
        raise TypeError("not an expression: %r" % (expr,))

    @staticmethod
    def _arith(lhs, rhs):
        numeric = (ExactNum, AnyNum)
        if isinstance(lhs, numeric) or isinstance(rhs, numeric):
            return AnyNum()
        return AnyNum()


def _join_env(a: dict, b: dict) -> dict:
    out = {}
    for key in set(a) | set(b):
        if key in a and key in b:
            out[key] = join(a[key], b[key])
        else:
            out[key] = TOP
    return out


# --- output-shape verifier ---------------------------------------------------


NUMERIC_SORTS = frozenset({"Real", "Int"})


def verify_output_shape(prog: A.Program, function: str, shape_spec: dict,
                        verifier="output-shape") -> Evidence:
    """shape_spec maps field -> "Real"/"Int" (numeric), an EnumStr, or
    "ListStr". Verified iff every return provably matches; Refuted on a
    provable violation; Unknown otherwise."""
    fn = _require_function(prog, function)
    returns = _AbstractEval(prog, fn).run()
    overall = EvidenceStatus.VERIFIED
    reports = []
    for av, pos in returns:
        status, detail = _check_return_shape(av, shape_spec)
        reports.append({"at": str(pos) if pos else "?", "value": _describe(av),
                        "status": status.value, "detail": detail})
        if status is EvidenceStatus.REFUTED:
            overall = EvidenceStatus.REFUTED
        elif status is EvidenceStatus.UNKNOWN and overall is not EvidenceStatus.REFUTED:
            overall = EvidenceStatus.UNKNOWN
    details = {"function": function, "returns": reports,
               "shape": {k: _describe_constraint(v) for k, v in shape_spec.items()}}
    return Evidence("", verifier, overall, details, prog.source_hash)


def _check_return_shape(av, shape_spec):
    if isinstance(av, Top):
        return EvidenceStatus.UNKNOWN, "return value shape is unknown"
    if not isinstance(av, RecordShape):
        return EvidenceStatus.REFUTED, "return value is not a record"
    fields = av.field_map()
    if set(fields) != set(shape_spec):
        return EvidenceStatus.REFUTED, (
            "record fields %s do not match required %s"
            % (sorted(fields), sorted(shape_spec)))
    worst = EvidenceStatus.VERIFIED
    notes = []
    for name, constraint in shape_spec.items():
        status, note = _check_field(fields[name], constraint)
        if note:
            notes.append("%s: %s" % (name, note))
        if status is EvidenceStatus.REFUTED:
            return EvidenceStatus.REFUTED, "; ".join(notes)
        if status is EvidenceStatus.UNKNOWN:
            worst = EvidenceStatus.UNKNOWN
    return worst, "; ".join(notes)


def _check_field(av, constraint):
    if isinstance(constraint, str) and constraint in NUMERIC_SORTS:
        if isinstance(av, (ExactNum, AnyNum)):
            return EvidenceStatus.VERIFIED, None
        if isinstance(av, Top):
            return EvidenceStatus.UNKNOWN, "not provably numeric"
        return EvidenceStatus.REFUTED, "provably non-numeric (%s)" % _describe(av)
    if isinstance(constraint, EnumStr):
        if isinstance(av, StrLits):
            if av.values <= constraint.values:
                return EvidenceStatus.VERIFIED, None
            extra = sorted(av.values - constraint.values)
            return EvidenceStatus.REFUTED, "values outside enumeration: %s" % extra
        if isinstance(av, (AnyStr, Top)):
            return EvidenceStatus.UNKNOWN, "not provably within the enumeration"
        return EvidenceStatus.REFUTED, "provably not a string (%s)" % _describe(av)
    if constraint == "ListStr":
        if isinstance(av, ListOfStrLits):
            if not av.may_contain_unknown:
                return EvidenceStatus.VERIFIED, None
            return EvidenceStatus.UNKNOWN, "list may contain non-literal elements"
        if isinstance(av, Top):
            return EvidenceStatus.UNKNOWN, "not provably a list of strings"
        return EvidenceStatus.REFUTED, "provably not a list of strings (%s)" % _describe(av)
    raise AnalysisError("unsupported shape constraint %r" % (constraint,))


def _describe(av) -> str:
    if isinstance(av, ExactNum):
        return "num %s" % av.value
    if isinstance(av, AnyNum):
        return "num"
    if isinstance(av, StrLits):
        return "str in %s" % sorted(av.values)
    if isinstance(av, EnumStr):
        return "str in %s" % sorted(av.values)
    if isinstance(av, AnyStr):
        return "str"
    if isinstance(av, ListOfStrLits):
        suffix = " plus unknown elements" if av.may_contain_unknown else ""
        return "list of %s%s" % (sorted(av.values), suffix)
    if isinstance(av, RecordShape):
        inner = ", ".join("%s: %s" % (k, _describe(v)) for k, v in av.fields)
        return "record {%s}" % inner
    return "unknown"


def _describe_constraint(c) -> str:
    if isinstance(c, EnumStr):
        return "str in %s" % sorted(c.values)
    return str(c)


# --- string-inventory verifier ------------------------------------------------


def verify_string_inventory(prog: A.Program, function: str, sink_var: str,
                            claimed_set, verifier="string-inventory") -> Evidence:
    """Computes the set of string literals ever appended to sink_var.
    Verified iff all appends are literals and the inventory is contained in
    the claimed set; Refuted with witnesses if a literal falls outside it."""
    fn = _require_function(prog, function)
    summaries = list_summaries(prog, fn)
    if sink_var not in summaries:
        raise AnalysisError(
            "sink variable '%s' is not a list variable in '%s'" % (sink_var, function))
    summary = summaries[sink_var]
    claimed = frozenset(claimed_set)
    inventory = sorted(summary.literals)
    details = {"function": function, "sink": sink_var,
               "inventory": inventory, "claimed": sorted(claimed)}
    if summary.unknown:
        details["reason"] = "a non-literal value may enter the sink"
        return Evidence("", verifier, EvidenceStatus.UNKNOWN, details, prog.source_hash)
    witnesses = sorted(summary.literals - claimed)
    if witnesses:
        details["witnesses"] = witnesses
        return Evidence("", verifier, EvidenceStatus.REFUTED, details, prog.source_hash)
    return Evidence("", verifier, EvidenceStatus.VERIFIED, details, prog.source_hash)


# --- threshold-ladder verifier -------------------------------------------------


EPSILON = Fraction(1, 10 ** 6)


def _constant_operand(expr, constants):
    if isinstance(expr, A.NumLit):
        return expr.value
    if isinstance(expr, A.Name):
        value = constants.get(expr.id)
        if isinstance(value, Fraction) and not isinstance(value, bool):
            return value
    return None


def _single_assign(body):
    if len(body) == 1 and isinstance(body[0], A.Assign) \
            and body[0].aug is None and isinstance(body[0].value, A.StrLit):
        return body[0]
    return None


def _find_decision_chain(fn: A.FunctionDef, score_var: str, constants):
    """Last if/elif/else chain whose arms all assign one variable a string
    literal and whose conditions compare score_var against resolvable
    numeric constants. Returns (stmt, decision var, [(op, threshold, text)],
    else text) or None."""
    found = None
    for stmt in fn.body:
        if not isinstance(stmt, A.If) or stmt.orelse is None:
            continue
        arms = []
        dvar = None
        ok = True
        for cond, body in stmt.arms:
            assign = _single_assign(body)
            if assign is None:
                ok = False
                break
            if not isinstance(cond, A.BinOp) or cond.op not in ("<", "<=", ">", ">="):
                ok = False
                break
            threshold = None
            op = cond.op
            if isinstance(cond.lhs, A.Name) and cond.lhs.id == score_var:
                threshold = _constant_operand(cond.rhs, constants)
            elif isinstance(cond.rhs, A.Name) and cond.rhs.id == score_var:
                value = _constant_operand(cond.lhs, constants)
                if value is not None:
                    threshold = value
                    op = {"<": ">", "<=": ">=", ">": "<", ">=": "<="}[op]
            if threshold is None:
                ok = False
                break
            if dvar is None:
                dvar = assign.target
            elif dvar != assign.target:
                ok = False
                break
            arms.append((op, threshold, assign.value.value))
        if not ok:
            continue
        last = _single_assign(stmt.orelse)
        if last is None or (dvar is not None and last.target != dvar):
            continue
        found = (stmt, dvar or last.target, arms, last.value.value)
    return found


def verify_threshold_ladder(prog: A.Program, function: str, score_var: str,
                            decision_order, verifier="threshold-ladder") -> Evidence:
    """Verified iff the decision computation matches the descending
    >=-threshold ladder pattern aligned with decision_order; otherwise the
    chain is evaluated over a sampling grid around its constants, which can
    only refute (witness pair) or leave the conjecture open."""
    order = list(decision_order)
    if len(order) < 2 or len(set(order)) != len(order):
        raise AnalysisError("decision order must list at least 2 distinct literals")
    fn = _require_function(prog, function)
    constants = extract_constants(prog)
    rank = {text: i for i, text in enumerate(order)}

    chain = _find_decision_chain(fn, score_var, constants)
    if chain is None:
        details = {"function": function, "score": score_var,
                   "reason": "no ladder-shaped decision computation over '%s' found"
                             % score_var}
        return Evidence("", verifier, EvidenceStatus.UNKNOWN, details, prog.source_hash)
    stmt, dvar, arms, else_text = chain

    details = {
        "function": function, "score": score_var, "decision_var": dvar,
        "thresholds": [str(t) for _, t, _ in arms],
        "decisions": [d for _, _, d in arms] + [else_text],
        "order": order,
    }

    pattern_ok = all(op == ">=" for op, _, _ in arms)
    thresholds = [t for _, t, _ in arms]
    decisions = [d for _, _, d in arms] + [else_text]
    pattern_ok = pattern_ok and all(d in rank for d in decisions)
    pattern_ok = pattern_ok and all(
        thresholds[i] > thresholds[i + 1] for i in range(len(thresholds) - 1))
    pattern_ok = pattern_ok and all(
        rank[decisions[i]] > rank[decisions[i + 1]] for i in range(len(decisions) - 1))
    if pattern_ok:
        details["pattern"] = "descending >=-threshold ladder"
        details["strengthening"] = (
            "verified the syntactic ladder property, which implies the claimed "
            "score-monotonicity for all inputs")
        return Evidence("", verifier, EvidenceStatus.VERIFIED, details, prog.source_hash)

    # Fallback: interpret the chain over a sampling grid.
    samples = _sample_grid(thresholds)
    interp = Interpreter(prog, {ext.name: _unreachable_extern(ext.name)
                                for ext in prog.externs})
    observed = []
    for sample in samples:
        env = dict(interp.globals)
        env.update({k: v for k, v in constants.items()})
        env[score_var] = sample
        interp.exec_stmt(stmt, env)
        observed.append((sample, env.get(dvar)))
    known = [(s, d) for s, d in observed if d in rank]
    if len(known) != len(observed):
        details["reason"] = "decision outside the declared order during sampling"
        return Evidence("", verifier, EvidenceStatus.UNKNOWN, details, prog.source_hash)
    for i in range(len(known)):
        for j in range(i + 1, len(known)):
            (sa, da), (sb, db) = known[i], known[j]
            if sa <= sb and rank[da] > rank[db]:
                details["witnesses"] = [
                    {"score": str(sa), "decision": da},
                    {"score": str(sb), "decision": db},
                ]
                return Evidence("", verifier, EvidenceStatus.REFUTED, details,
                                prog.source_hash)
    details["reason"] = "no sampled violation, but the pattern is not a ladder"
    return Evidence("", verifier, EvidenceStatus.UNKNOWN, details, prog.source_hash)


def _sample_grid(thresholds):
    points = set()
    ordered = sorted(set(thresholds))
    for t in ordered:
        points.update({t - 1, t - EPSILON, t, t + EPSILON, t + 1})
    for a, b in zip(ordered, ordered[1:]):
        points.add((a + b) / 2)
    if ordered:
        points.add(ordered[0] - 2)
        points.add(ordered[-1] + 2)
    return sorted(points)


def _unreachable_extern(name):
    def call(*_args):
        raise AnalysisError(
            "extern '%s' must not be reached by the decision chain" % name)
    return call


# --- const-relation verifier ----------------------------------------------------


def verify_const_relation(prog: A.Program, relation, binding: dict,
                          verifier="const-relation") -> Evidence:
    """Substitutes program constants into the relation via the binding and
    evaluates exactly. Unknown iff a bound constant is absent."""
    constants = extract_constants(prog)
    values = {}
    missing = []
    for logical, const_name in binding.items():
        if const_name in constants:
            value = constants[const_name]
            if isinstance(value, bool) or not isinstance(value, Fraction):
                raise AnalysisError(
                    "constant '%s' is not numeric" % const_name)
            values[logical] = value
        else:
            missing.append(const_name)
    details = {"binding": {k: str(v) for k, v in binding.items()},
               "values": {k: str(v) for k, v in values.items()}}
    if missing:
        details["missing"] = sorted(missing)
        return Evidence("", verifier, EvidenceStatus.UNKNOWN, details, prog.source_hash)
    holds = _eval_relation(relation, values)
    status = EvidenceStatus.VERIFIED if holds else EvidenceStatus.REFUTED
    return Evidence("", verifier, status, details, prog.source_hash)


def _eval_relation(phi, values) -> bool:
    if isinstance(phi, S.TrueF):
        return True
    if isinstance(phi, S.FalseF):
        return False
    if isinstance(phi, S.Not):
        return not _eval_relation(phi.body, values)
    if isinstance(phi, S.And):
        return all(_eval_relation(p, values) for p in phi.parts)
    if isinstance(phi, S.Or):
        return any(_eval_relation(p, values) for p in phi.parts)
    if isinstance(phi, S.Implies):
        return (not _eval_relation(phi.lhs, values)) or _eval_relation(phi.rhs, values)
    if isinstance(phi, S.Iff):
        return _eval_relation(phi.lhs, values) == _eval_relation(phi.rhs, values)
    if isinstance(phi, S.Equals):
        return _eval_relation_term(phi.lhs, values) == _eval_relation_term(phi.rhs, values)
    if isinstance(phi, S.Compare):
        lhs = _eval_relation_term(phi.lhs, values)
        rhs = _eval_relation_term(phi.rhs, values)
        return lhs <= rhs if phi.rel == "<=" else lhs < rhs
    raise AnalysisError(
        "relation must be ground rational arithmetic, found %s" % type(phi).__name__)


def _eval_relation_term(term, values) -> Fraction:
    if isinstance(term, S.NumLit):
        return term.value
    if isinstance(term, S.Apply):
        if term.func in S.ARITH_OPS:
            lhs = _eval_relation_term(term.args[0], values)
            rhs = _eval_relation_term(term.args[1], values)
            if term.func == "+":
                return lhs + rhs
            if term.func == "-":
                return lhs - rhs
            return lhs * rhs
        if not term.args and term.func in values:
            return values[term.func]
        raise AnalysisError("relation uses unbound name '%s'" % term.func)
    raise AnalysisError("relation terms must be constants and arithmetic")
