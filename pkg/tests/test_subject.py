"""Subject language: parser, printer round-trip, interpreter, constants."""

import random
from fractions import Fraction

import pytest

from avc.subject import ast as A
from avc.subject.interp import (
    SLRuntimeError, extract_constants, interpret, round_half_away,
)
from avc.subject.parser import SLSyntaxError, parse_program, print_program


def basic_externs():
    return {
        "mitigation_kb": lambda account, rf: Fraction(0),
        "high_risk_countries": lambda: ["XX", "YY"],
    }


def aml_input(**overrides):
    data = {
        "transactions": [],
        "account_age_days": Fraction(400),
        "customer_profile": ["retail"],
        "prior_alerts": Fraction(0),
    }
    data.update(overrides)
    return [{"id": "acct"}, data]


def test_corpus_program_counts(corpus_program):
    assert len(corpus_program.const_decls) == 5
    assert len(corpus_program.externs) == 2
    assert len(corpus_program.functions) == 1
    assert corpus_program.functions[0].name == "assess_suspicious_activity"


def test_single_line_function():
    prog = parse_program("def id(x): return x\n")
    assert len(prog.functions) == 1
    assert interpret(prog, "id", [Fraction(7)]) == Fraction(7)


def test_missing_return_rejected():
    src = "def f(x):\n    if x > 0:\n        return x\n"
    with pytest.raises(SLSyntaxError, match="missing return path"):
        parse_program(src)


def test_duplicate_top_level_name_rejected():
    with pytest.raises(SLSyntaxError, match="duplicate name"):
        parse_program("X = 1.0\nX = 2.0\n")


def test_interpret_zero_risk(corpus_program):
    out = interpret(corpus_program, "assess_suspicious_activity",
                    aml_input(), basic_externs())
    assert out == {"score": Fraction(0), "decision": "ok", "reasons": []}


def test_interpret_heavy_risk(corpus_program):
    txns = [
        {"country": "XX", "amount": Fraction(150000)},
        {"country": "AA", "amount": Fraction(120000)},
    ]
    out = interpret(
        corpus_program, "assess_suspicious_activity",
        aml_input(transactions=txns, account_age_days=Fraction(30),
                  prior_alerts=Fraction(1)),
        basic_externs())
    # high-risk jurisdiction 6 + large transactions 3 + new account 3 + prior alert 3
    assert out["score"] == Fraction(15)
    assert out["decision"] == "flag"
    assert len(out["reasons"]) == 4


def test_interpret_mitigation_and_rounding(corpus_program):
    externs = basic_externs()
    externs["mitigation_kb"] = lambda account, rf: Fraction(997, 100)  # clamped to 4.0
    txns = [{"country": "XX", "amount": Fraction(10)}]
    out = interpret(corpus_program, "assess_suspicious_activity",
                    aml_input(transactions=txns), externs)
    # 6.0 high risk - 4.0 max mitigation = 2.0 -> ok, mitigation reason present
    assert out["score"] == Fraction(2)
    assert out["decision"] == "ok"
    assert out["reasons"][-1].startswith("Documented contextual factors")


def test_interpreter_deterministic(corpus_program):
    args = aml_input(transactions=[{"country": "XX", "amount": Fraction(5)}])
    a = interpret(corpus_program, "assess_suspicious_activity", args, basic_externs())
    b = interpret(corpus_program, "assess_suspicious_activity",
                  aml_input(transactions=[{"country": "XX", "amount": Fraction(5)}]),
                  basic_externs())
    assert a == b


def test_runtime_type_error_has_position():
    prog = parse_program('def f(x):\n    return x + "a"\n')
    with pytest.raises(SLRuntimeError, match="line 2"):
        interpret(prog, "f", [Fraction(1)])


def test_missing_record_field_error():
    prog = parse_program('def f(r):\n    return r.get("absent")\n')
    with pytest.raises(SLRuntimeError, match="missing record field"):
        interpret(prog, "f", [{}])


def test_undefined_variable_error():
    prog = parse_program("def f(x):\n    return ghost\n")
    with pytest.raises(SLRuntimeError, match="undefined variable 'ghost'"):
        interpret(prog, "f", [Fraction(1)])


def test_round_half_away_from_zero():
    assert round_half_away(Fraction(125, 1000), 2) == Fraction(13, 100)
    assert round_half_away(Fraction(-125, 1000), 2) == Fraction(-13, 100)
    assert round_half_away(Fraction(5, 2), 0) == Fraction(3)
    assert round_half_away(Fraction(-5, 2), 0) == Fraction(-3)


def test_extract_constants_corpus(corpus_program):
    consts = extract_constants(corpus_program)
    assert consts == {
        "LOW_RISK_WEIGHT": Fraction(1),
        "MID_RISK_WEIGHT": Fraction(3),
        "HIGH_RISK_WEIGHT": Fraction(6),
        "SUSPICIOUS_THRESHOLD": Fraction(8),
        "AMBIGUOUS_THRESHOLD": Fraction(4),
        "MAX_MITIGATION": Fraction(4),
    }


def test_extract_constants_empty_program():
    assert extract_constants(parse_program("")) == {}


def test_extract_constants_rebinding_excluded():
    src = "def f():\n    X = 1.0\n    X = 2.0\n    Y = 3.0\n    return Y\n"
    consts = extract_constants(parse_program(src))
    assert "X" not in consts
    assert consts["Y"] == Fraction(3)


def test_extract_constants_aug_assign_excluded():
    src = "def f():\n    X = 1.0\n    X += 1.0\n    return X\n"
    assert "X" not in extract_constants(parse_program(src))


def test_let_binding():
    prog = parse_program("def f(x):\n    let y = x + 1\n    return y\n")
    assert interpret(prog, "f", [Fraction(2)]) == Fraction(3)


def test_set_builtin_and_membership():
    src = (
        "def f(xs):\n"
        "    pool = set(xs)\n"
        '    if "a" in pool:\n'
        "        return True\n"
        "    return False\n"
    )
    prog = parse_program(src)
    assert interpret(prog, "f", [["a", "b"]]) is True
    assert interpret(prog, "f", [["c"]]) is False


def test_corpus_roundtrip(corpus_program):
    printed = print_program(corpus_program)
    assert parse_program(printed) == corpus_program


# --- all-paths-return: exhaustive path enumeration oracle ---------------------


def enumerate_paths(body):
    """All linear statement sequences through body; for-loops contribute a
    zero-iteration and a one-iteration variant."""
    seqs = [[]]
    for stmt in body:
        if isinstance(stmt, A.If):
            options = []
            for _, arm in stmt.arms:
                options.extend(enumerate_paths(arm))
            if stmt.orelse is not None:
                options.extend(enumerate_paths(stmt.orelse))
            else:
                options.append([])
            seqs = [s + o for s in seqs for o in options]
        elif isinstance(stmt, A.For):
            options = [[]] + enumerate_paths(stmt.body)
            seqs = [s + o for s in seqs for o in options]
        else:
            seqs = [s + [stmt] for s in seqs]
    return seqs


def oracle_always_returns(body):
    return all(any(isinstance(s, A.Return) for s in seq)
               for seq in enumerate_paths(body))


def gen_body(rng, depth, branches):
    body = []
    for _ in range(rng.randint(1, 3)):
        roll = rng.random()
        if roll < 0.25 and depth > 0 and branches[0] < 12:
            branches[0] += 1
            arms = tuple(
                (A.BoolLit(True), tuple(gen_body(rng, depth - 1, branches)))
                for _ in range(rng.randint(1, 2)))
            orelse = tuple(gen_body(rng, depth - 1, branches)) \
                if rng.random() < 0.6 else None
            body.append(A.If(arms, orelse))
        elif roll < 0.35 and depth > 0:
            body.append(A.For("i", A.ListLit(()),
                              tuple(gen_body(rng, depth - 1, branches))))
        elif roll < 0.6:
            body.append(A.Return(A.NumLit(Fraction(0))))
        else:
            body.append(A.Assign("t", A.NumLit(Fraction(1))))
    return body


def test_always_returns_matches_enumeration_oracle():
    rng = random.Random(808)
    for _ in range(500):
        body = tuple(gen_body(rng, 3, [0]))
        assert A.always_returns(body) == oracle_always_returns(body)


# --- randomized program round-trip ---------------------------------------------


_NAMES = ["alpha", "beta", "gamma", "delta", "count", "total"]


def gen_expr(rng, names, depth):
    roll = rng.random()
    if depth <= 0 or roll < 0.3:
        kind = rng.choice(["num", "str", "bool", "name"])
        if kind == "num":
            return A.NumLit(Fraction(rng.randint(0, 99), rng.choice([1, 2, 4, 10])))
        if kind == "str":
            return A.StrLit(rng.choice(["lo", "hi", "mid words", 'quo"te']))
        if kind == "bool":
            return A.BoolLit(rng.random() < 0.5)
        return A.Name(rng.choice(names))
    if roll < 0.45:
        op = rng.choice(["+", "-", "*", "==", "!=", "<=", ">=", "<", ">",
                         "and", "or", "in"])
        return A.BinOp(op, gen_expr(rng, names, depth - 1),
                       gen_expr(rng, names, depth - 1))
    if roll < 0.55:
        return A.UnaryOp(rng.choice(["not", "-"]), gen_expr(rng, names, depth - 1))
    if roll < 0.65:
        return A.Call(rng.choice(["len", "min", "max"]),
                      tuple(gen_expr(rng, names, depth - 1) for _ in range(2)))
    if roll < 0.75:
        return A.MethodCall(gen_expr(rng, names, depth - 1), "get",
                            (A.StrLit("k"),))
    if roll < 0.85:
        return A.ListLit(tuple(gen_expr(rng, names, depth - 1)
                               for _ in range(rng.randint(0, 3))))
    if roll < 0.95:
        return A.RecordLit((("a", gen_expr(rng, names, depth - 1)),))
    return A.Lambda("v", gen_expr(rng, names + ["v"], depth - 1))


def gen_stmt_body(rng, names, depth):
    body = []
    for _ in range(rng.randint(1, 3)):
        roll = rng.random()
        if roll < 0.5:
            aug = rng.choice([None, None, "+", "-"])
            body.append(A.Assign(rng.choice(names),
                                 gen_expr(rng, names, depth), aug=aug))
        elif roll < 0.65 and depth > 0:
            arms = ((gen_expr(rng, names, depth - 1),
                     tuple(gen_stmt_body(rng, names, depth - 1))),)
            body.append(A.If(arms, tuple(gen_stmt_body(rng, names, depth - 1))))
        elif roll < 0.8 and depth > 0:
            body.append(A.For("it", gen_expr(rng, names, depth - 1),
                              tuple(gen_stmt_body(rng, names, depth - 1))))
        else:
            body.append(A.ExprStmt(A.MethodCall(
                A.Name(rng.choice(names)), "append",
                (gen_expr(rng, names, depth),))))
    return body


def gen_program(rng):
    consts = tuple(
        ("K%d" % i, A.NumLit(Fraction(rng.randint(0, 9))))
        for i in range(rng.randint(0, 3)))
    externs = tuple(
        A.ExternDecl("ext%d" % i, tuple("ab"[:rng.randint(0, 2)]))
        for i in range(rng.randint(0, 2)))
    functions = []
    for i in range(rng.randint(1, 2)):
        body = gen_stmt_body(rng, _NAMES, 2)
        body.append(A.Return(gen_expr(rng, _NAMES, 1)))
        functions.append(A.FunctionDef("fn%d" % i, ("x",), tuple(body)))
    return A.Program(consts, externs, tuple(functions))


def test_random_program_roundtrip():
    rng = random.Random(70707)
    for _ in range(200):
        prog = gen_program(rng)
        printed = print_program(prog)
        back = parse_program(printed)
        assert back == prog, printed
