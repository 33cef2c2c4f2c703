"""SMT-LIB emission (golden, deterministic) and the solver process driver."""

import os
import stat
import subprocess
from pathlib import Path

import pytest

from avc.inference import (
    SolverConfig, VerdictStatus, check_inference, check_tier2, emit_smt,
    run_solver,
)
from avc.logic import syntax as S
from avc.pipeline import statement_formula

GOLDEN = Path(__file__).parent / "golden" / "c3_decomposition.smt2"

SIG = S.Signature(
    sorts=frozenset(),
    functions={"c": ((), "Str")},
    predicates={"P": ("Str",)},
)


def c3_script(corpus_rationale):
    r = corpus_rationale
    premises = [statement_formula(r.claims[c]) for c in ("C11", "C12")]
    conclusion = statement_formula(r.claims["C3"])
    return emit_smt(r.signature, premises, conclusion)


def test_c3_script_matches_golden(corpus_rationale):
    assert c3_script(corpus_rationale) == GOLDEN.read_text()


def test_emission_deterministic(corpus_rationale):
    assert c3_script(corpus_rationale) == c3_script(corpus_rationale)


def test_witness_does_not_generalize_script():
    # premises {P(c)}, conclusion forall s. P(s): satisfiable negation.
    premises = [S.PredApp("P", (S.Apply("c", ()),))]
    conclusion = S.Forall("s", "Str", S.PredApp("P", (S.Var("s", "Str"),)))
    script = emit_smt(SIG, premises, conclusion)
    assert "(assert (P c))" in script
    assert "(assert (not (forall ((s Str)) (P s))))" in script
    assert script.rstrip().endswith("(check-sat)")


def test_empty_premises_negated_true():
    script = emit_smt(SIG, [], S.TRUE)
    assert "(assert (not true))" in script


def test_memberof_lowered_to_equality_disjunction():
    phi = S.Forall("s", "Str",
                   S.Implies(S.MemberOf(S.Var("s", "Str"), ("b", "a")),
                             S.PredApp("P", (S.Var("s", "Str"),))))
    script = emit_smt(SIG, [], phi)
    # literals declared sorted; disjunction follows the membership order
    assert '(declare-const strlit_0 Str) ; "a"' in script
    assert '(declare-const strlit_1 Str) ; "b"' in script
    assert "(or (= s strlit_1) (= s strlit_0))" in script
    assert "(assert (distinct strlit_0 strlit_1))" in script


# --- process driver ----------------------------------------------------------


def make_solver(tmp_path, name, body):
    script = tmp_path / name
    script.write_text("#!/bin/sh\n%s\n" % body)
    script.chmod(script.stat().st_mode | stat.S_IEXEC)
    return str(script)


def test_driver_unsat(tmp_path):
    cmd = make_solver(tmp_path, "unsat.sh", "cat > /dev/null\necho unsat")
    answer, tail = run_solver("(check-sat)\n", SolverConfig(cmd))
    assert answer == "unsat" and tail == ""


def test_driver_sat_with_model(tmp_path):
    cmd = make_solver(tmp_path, "sat.sh",
                      'cat > /dev/null\necho sat\necho "(model (define-fun x () Bool true))"')
    answer, tail = run_solver("x\n", SolverConfig(cmd))
    assert answer == "sat"
    assert "define-fun" in tail


def test_driver_file_template(tmp_path):
    cmd = make_solver(tmp_path, "file.sh", 'test -f "$1" && echo unsat') + " {file}"
    answer, _ = run_solver("(check-sat)\n", SolverConfig(cmd))
    assert answer == "unsat"


def test_driver_timeout(tmp_path):
    cmd = make_solver(tmp_path, "slow.sh", "sleep 5\necho unsat")
    answer, reason = run_solver("x", SolverConfig(cmd, timeout=0.2))
    assert answer is None
    assert "timeout" in reason


def test_driver_not_found():
    answer, reason = run_solver("x", SolverConfig("/no/such/solver-binary"))
    assert answer is None
    assert "not found" in reason


def test_driver_malformed_output(tmp_path):
    cmd = make_solver(tmp_path, "garbage.sh", "cat > /dev/null\necho flurble")
    answer, reason = run_solver("x", SolverConfig(cmd))
    assert answer is None
    assert "malformed" in reason


def test_tier2_verdicts(tmp_path, corpus_rationale):
    r = corpus_rationale
    premises = [statement_formula(r.claims[c]) for c in ("C11", "C12")]
    conclusion = statement_formula(r.claims["C3"])
    unsat = SolverConfig(make_solver(tmp_path, "u.sh", "cat > /dev/null\necho unsat"))
    sat = SolverConfig(make_solver(tmp_path, "s.sh", "cat > /dev/null\necho sat\necho model"))
    unknown = SolverConfig(make_solver(tmp_path, "k.sh", "cat > /dev/null\necho unknown"))

    v = check_tier2(r.signature, premises, conclusion, unsat)
    assert v.status is VerdictStatus.MACHINE_VALID and v.tier == 2
    v = check_tier2(r.signature, premises, conclusion, sat)
    assert v.status is VerdictStatus.MACHINE_INVALID and "model" in v.diagnostic
    v = check_tier2(r.signature, premises, conclusion, unknown)
    assert v.status is VerdictStatus.UNKNOWN


def test_check_inference_skips_solver_when_tier1_decides(tmp_path, corpus_rationale):
    r = corpus_rationale
    counter = tmp_path / "launches"
    counter.write_text("")
    cmd = make_solver(
        tmp_path, "count.sh",
        'cat > /dev/null\necho launched >> "%s"\necho unsat' % counter)
    cfg = SolverConfig(cmd)
    premises = [statement_formula(r.claims[c]) for c in ("C1", "C2", "C3")]
    conclusion = statement_formula(r.claims["C0"])
    verdict = check_inference(r.signature, premises, conclusion, cfg)
    assert verdict.status is VerdictStatus.MACHINE_VALID
    assert verdict.tier == 1
    assert counter.read_text() == ""


def test_check_inference_tier2_gated_by_config(corpus_rationale):
    r = corpus_rationale
    premises = [statement_formula(r.claims[c]) for c in ("C11", "C12")]
    conclusion = statement_formula(r.claims["C3"])
    verdict = check_inference(r.signature, premises, conclusion, None)
    assert verdict.status is VerdictStatus.UNKNOWN
    assert verdict.tier == 1
    disabled = SolverConfig("whatever", enabled=False)
    verdict = check_inference(r.signature, premises, conclusion, disabled)
    assert verdict.status is VerdictStatus.UNKNOWN


# --- live solver (present only on machines with z3/cvc5) ----------------------


def test_c3_script_unsat_with_real_solver(corpus_rationale, solver_command):
    if solver_command is None:
        pytest.skip("no SMT solver on PATH")
    answer, _ = run_solver(c3_script(corpus_rationale), SolverConfig(solver_command))
    assert answer == "unsat"


def test_witness_script_sat_with_real_solver(solver_command):
    if solver_command is None:
        pytest.skip("no SMT solver on PATH")
    premises = [S.PredApp("P", (S.Apply("c", ()),))]
    conclusion = S.Forall("s", "Str", S.PredApp("P", (S.Var("s", "Str"),)))
    cfg = SolverConfig(solver_command)
    verdict = check_tier2(SIG, premises, conclusion, cfg)
    assert verdict.status is VerdictStatus.MACHINE_INVALID
