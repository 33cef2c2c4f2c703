"""Shared fixtures: corpus objects, random generators, solver discovery."""

from __future__ import annotations

import random
import shutil
import string
from fractions import Fraction

import pytest

from avc.corpus import aml_program_path, aml_rationale_path
from avc.logic import syntax as S
from avc.pipeline import analyze
from avc.rationale.dsl import parse_rationale
from avc.subject.parser import parse_program


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion at the end of the run."""
    seen = {}
    for outcome in ("passed", "failed", "error", "skipped"):
        for report in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(report, "nodeid", "")
            if "test_acceptance" not in nodeid:
                continue
            if getattr(report, "when", "call") not in ("call", "setup"):
                continue
            name = nodeid.split("::")[-1]
            seen.setdefault(name, outcome.upper())
    if seen:
        terminalreporter.write_line("")
        terminalreporter.write_line("acceptance criteria:")
        for name, outcome in seen.items():
            terminalreporter.write_line("  %-58s %s" % (name, outcome))


@pytest.fixture(scope="session")
def corpus_rationale():
    return parse_rationale(aml_rationale_path().read_text())


@pytest.fixture(scope="session")
def corpus_program():
    return parse_program(aml_program_path().read_text())


@pytest.fixture(scope="session")
def corpus_analysis(corpus_rationale, corpus_program):
    # No solver: tier 2 disabled.
    return analyze(corpus_rationale, corpus_program, solver=None)


def find_solver_command():
    """Command template for a real SMT solver on PATH, if any."""
    if shutil.which("z3"):
        return "z3 -in"
    if shutil.which("cvc5"):
        return "cvc5 --lang smt2 -"
    return None


@pytest.fixture(scope="session")
def solver_command():
    return find_solver_command()


# --- random formula generation ------------------------------------------------


TEST_SIG = S.Signature(
    sorts=frozenset({"D"}),
    functions={
        "c0": ((), "D"),
        "c1": ((), "D"),
        "g": (("D",), "D"),
        "h": (("D", "D"), "D"),
        "k0": ((), "Real"),
        "k1": ((), "Real"),
        "m": (("D",), "Real"),
    },
    predicates={
        "P": ("D",),
        "Q": ("D", "D"),
        "W": (),
        "T": ("Str",),
        "N": ("Real",),
    },
)

_WORDS = ["alpha", "beta", "gamma", "delta", "omega", "kappa", "sigma"]


def gen_term(rng: random.Random, sort: str, env: dict, depth: int):
    vars_of_sort = [name for name, s in env.items() if s == sort]
    if vars_of_sort and rng.random() < 0.5:
        return S.Var(rng.choice(vars_of_sort), sort)
    if sort == "Str":
        return S.StrLit(rng.choice(_WORDS))
    if sort == "Real":
        if depth > 0 and rng.random() < 0.3:
            op = rng.choice(["+", "-", "*"])
            return S.Apply(op, (gen_term(rng, "Real", env, depth - 1),
                                gen_term(rng, "Real", env, depth - 1)))
        if rng.random() < 0.5:
            return S.NumLit(Fraction(rng.randint(-5, 9)))
        return S.Apply(rng.choice(["k0", "k1"]), ())
    # sort D
    if depth > 0 and rng.random() < 0.4:
        if rng.random() < 0.5:
            return S.Apply("g", (gen_term(rng, "D", env, depth - 1),))
        return S.Apply("h", (gen_term(rng, "D", env, depth - 1),
                             gen_term(rng, "D", env, depth - 1)))
    return S.Apply(rng.choice(["c0", "c1"]), ())


def gen_formula(rng: random.Random, env: dict = None, depth: int = 3):
    """Closed random formula over TEST_SIG."""
    env = dict(env or {})
    atoms = ["pred", "informal", "true", "false", "equals", "compare", "member"]
    if depth <= 0:
        kind = rng.choice(atoms)
    else:
        kind = rng.choice(atoms + ["not", "and", "or", "implies", "iff",
                                   "forall", "exists", "forall", "and"])
    if kind == "true":
        return S.TRUE
    if kind == "false":
        return S.FALSE
    if kind == "informal":
        return S.Informal("%s holds" % rng.choice(_WORDS))
    if kind == "pred":
        name = rng.choice(["P", "Q", "W", "T", "N"])
        arg_sorts = TEST_SIG.predicates[name]
        return S.PredApp(name, tuple(
            gen_term(rng, s, env, depth - 1) for s in arg_sorts))
    if kind == "equals":
        sort = rng.choice(["D", "Real", "Str"])
        return S.Equals(gen_term(rng, sort, env, depth - 1),
                        gen_term(rng, sort, env, depth - 1))
    if kind == "compare":
        return S.Compare(rng.choice(["<=", "<"]),
                         gen_term(rng, "Real", env, depth - 1),
                         gen_term(rng, "Real", env, depth - 1))
    if kind == "member":
        count = rng.randint(1, 3)
        choices = tuple(rng.sample(_WORDS, count))
        return S.MemberOf(gen_term(rng, "Str", env, depth - 1), choices)
    if kind == "not":
        return S.Not(gen_formula(rng, env, depth - 1))
    if kind in ("and", "or"):
        parts = tuple(gen_formula(rng, env, depth - 1)
                      for _ in range(rng.randint(2, 3)))
        return S.And(parts) if kind == "and" else S.Or(parts)
    if kind == "implies":
        return S.Implies(gen_formula(rng, env, depth - 1),
                         gen_formula(rng, env, depth - 1))
    if kind == "iff":
        return S.Iff(gen_formula(rng, env, depth - 1),
                     gen_formula(rng, env, depth - 1))
    # quantifier
    var = rng.choice(string.ascii_lowercase[:6]) + str(rng.randint(0, 3))
    sort = rng.choice(["D", "Str", "Real"])
    body = gen_formula(rng, {**env, var: sort}, depth - 1)
    ctor = S.Forall if kind == "forall" else S.Exists
    return ctor(var, sort, body)


def alpha_rename(rng: random.Random, phi, mapping=None):
    """An alpha-variant of phi: bound variables renamed to fresh names."""
    mapping = dict(mapping or {})

    def rename_term(t):
        if isinstance(t, S.Var):
            return S.Var(mapping.get(t.name, t.name), t.sort)
        if isinstance(t, S.Apply):
            return S.Apply(t.func, tuple(rename_term(a) for a in t.args))
        return t

    if isinstance(phi, (S.TrueF, S.FalseF, S.Informal)):
        return phi
    if isinstance(phi, S.PredApp):
        return S.PredApp(phi.pred, tuple(rename_term(a) for a in phi.args))
    if isinstance(phi, S.Equals):
        return S.Equals(rename_term(phi.lhs), rename_term(phi.rhs))
    if isinstance(phi, S.Compare):
        return S.Compare(phi.rel, rename_term(phi.lhs), rename_term(phi.rhs))
    if isinstance(phi, S.MemberOf):
        return S.MemberOf(rename_term(phi.term), phi.choices)
    if isinstance(phi, S.Not):
        return S.Not(alpha_rename(rng, phi.body, mapping))
    if isinstance(phi, S.And):
        return S.And(tuple(alpha_rename(rng, p, mapping) for p in phi.parts))
    if isinstance(phi, S.Or):
        return S.Or(tuple(alpha_rename(rng, p, mapping) for p in phi.parts))
    if isinstance(phi, S.Implies):
        return S.Implies(alpha_rename(rng, phi.lhs, mapping),
                         alpha_rename(rng, phi.rhs, mapping))
    if isinstance(phi, S.Iff):
        return S.Iff(alpha_rename(rng, phi.lhs, mapping),
                     alpha_rename(rng, phi.rhs, mapping))
    if isinstance(phi, (S.Forall, S.Exists)):
        fresh = "rv%d" % rng.randint(1000, 99999)
        inner = {**mapping, phi.var: fresh}
        ctor = type(phi)
        return ctor(fresh, phi.sort, alpha_rename(rng, phi.body, inner))
    raise TypeError(repr(phi))
