"""Static verifiers: examples, refutations, and soundness vs the interpreter."""

import random
from fractions import Fraction

import pytest

from avc.analysis import (
    AnalysisError, EvidenceStatus, StaleSubjectError, join, leq, run_verifiers,
    verify_const_relation, verify_output_shape, verify_string_inventory,
    verify_threshold_ladder,
)
from avc.analysis.domain import (
    TOP, AnyNum, AnyStr, EnumStr, ExactNum, ListOfStrLits, RecordShape, StrLits,
)
from avc.logic.parser import parse_formula
from avc.logic import syntax as S
from avc.rationale.dsl import parse_rationale, print_rationale
from avc.subject.interp import interpret
from avc.subject.parser import parse_program

DECISION_SHAPE = {
    "score": "Real",
    "decision": EnumStr(frozenset({"flag", "review", "ok"})),
    "reasons": "ListStr",
}

SEVEN = (
    "Transactions involving higher-risk jurisdictions were observed",
    "Multiple high-value transactions were recorded within the review period",
    "Account is relatively new, which may limit historical context for activity patterns",
    "Prior monitoring alerts exist for this account",
    "Transaction volume is elevated compared to typical baseline activity",
    "Features of customer profile is associated with moderately elevated AML monitoring sensitivity",
    "Documented contextual factors may explain some observed activity",
)


# --- output shape -------------------------------------------------------------


def test_shape_verified_on_corpus(corpus_program):
    ev = verify_output_shape(corpus_program, "assess_suspicious_activity",
                             DECISION_SHAPE)
    assert ev.status is EvidenceStatus.VERIFIED


def test_shape_refuted_on_bare_number():
    prog = parse_program("def f(x):\n    return 3.0\n")
    ev = verify_output_shape(prog, "f", DECISION_SHAPE)
    assert ev.status is EvidenceStatus.REFUTED


def test_shape_unknown_on_extern_decision():
    src = (
        "extern pick(x)\n"
        "def f(x):\n"
        "    d = pick(x)\n"
        '    return {"score": 1.0, "decision": d, "reasons": []}\n'
    )
    ev = verify_output_shape(parse_program(src), "f", DECISION_SHAPE)
    assert ev.status is EvidenceStatus.UNKNOWN


def test_shape_refuted_on_out_of_enum_decision():
    src = (
        "def f(x):\n"
        "    if x > 0:\n"
        '        d = "flag"\n'
        "    else:\n"
        '        d = "maybe"\n'
        '    return {"score": 1.0, "decision": d, "reasons": []}\n'
    )
    ev = verify_output_shape(parse_program(src), "f", DECISION_SHAPE)
    assert ev.status is EvidenceStatus.REFUTED
    assert "maybe" in str(ev.details)


def test_shape_refuted_on_missing_field():
    prog = parse_program('def f(x):\n    return {"score": 1.0}\n')
    ev = verify_output_shape(prog, "f", DECISION_SHAPE)
    assert ev.status is EvidenceStatus.REFUTED


def test_shape_unknown_function_raises(corpus_program):
    with pytest.raises(AnalysisError, match="unknown function"):
        verify_output_shape(corpus_program, "nope", DECISION_SHAPE)


# --- string inventory -----------------------------------------------------------


def test_inventory_verified_exactly_seven(corpus_program):
    ev = verify_string_inventory(
        corpus_program, "assess_suspicious_activity", "reasons", frozenset(SEVEN))
    assert ev.status is EvidenceStatus.VERIFIED
    assert ev.details["inventory"] == sorted(SEVEN)
    assert len(ev.details["inventory"]) == 7


def test_inventory_refuted_with_witness_s7(corpus_program):
    truncated = frozenset(SEVEN[:-1])
    ev = verify_string_inventory(
        corpus_program, "assess_suspicious_activity", "reasons", truncated)
    assert ev.status is EvidenceStatus.REFUTED
    assert ev.details["witnesses"] == [
        "Documented contextual factors may explain some observed activity"]


def test_inventory_unknown_on_non_literal_append():
    src = (
        "def f(inp):\n"
        "    out = []\n"
        '    out.append(inp.get("name"))\n'
        "    return out\n"
    )
    ev = verify_string_inventory(parse_program(src), "f", "out", frozenset({"a"}))
    assert ev.status is EvidenceStatus.UNKNOWN


def test_inventory_unknown_on_alias():
    src = (
        "def f(x):\n"
        "    out = []\n"
        "    other = out\n"
        '    other.append("sneaky")\n'
        "    return out\n"
    )
    ev = verify_string_inventory(parse_program(src), "f", "out", frozenset({"a"}))
    assert ev.status is not EvidenceStatus.VERIFIED


def test_inventory_sink_not_found(corpus_program):
    with pytest.raises(AnalysisError, match="not a list variable"):
        verify_string_inventory(corpus_program, "assess_suspicious_activity",
                                "ghost", frozenset())


# --- threshold ladder -------------------------------------------------------------


def test_ladder_verified_on_corpus(corpus_program):
    ev = verify_threshold_ladder(
        corpus_program, "assess_suspicious_activity", "score",
        ("ok", "review", "flag"))
    assert ev.status is EvidenceStatus.VERIFIED
    assert ev.details["thresholds"] == ["8", "4"]
    assert "strengthening" in ev.details


def test_ladder_refuted_by_sampling():
    src = (
        "def f(score):\n"
        "    if score < 2.0:\n"
        '        decision = "flag"\n'
        "    else:\n"
        '        decision = "ok"\n'
        "    return decision\n"
    )
    ev = verify_threshold_ladder(parse_program(src), "f", "score",
                                 ("ok", "review", "flag"))
    assert ev.status is EvidenceStatus.REFUTED
    lo, hi = ev.details["witnesses"]
    assert lo["decision"] == "flag" and hi["decision"] == "ok"
    assert Fraction(lo["score"]) <= Fraction(hi["score"])


def test_ladder_unknown_on_extern_decision():
    src = (
        "extern decide(s)\n"
        "def f(score):\n"
        "    return decide(score)\n"
    )
    ev = verify_threshold_ladder(parse_program(src), "f", "score",
                                 ("ok", "review", "flag"))
    assert ev.status is EvidenceStatus.UNKNOWN


def test_ladder_requires_two_decisions(corpus_program):
    with pytest.raises(AnalysisError, match="at least 2"):
        verify_threshold_ladder(corpus_program, "assess_suspicious_activity",
                                "score", ("ok",))


# --- const relation ----------------------------------------------------------------


RELATION_SIG = S.Signature(functions={
    "low": ((), "Real"), "mid": ((), "Real"), "high": ((), "Real")})
RELATION = parse_formula("mid == 3.0 * low && high == 2.0 * mid", RELATION_SIG)
BINDING = {"low": "LOW_RISK_WEIGHT", "mid": "MID_RISK_WEIGHT",
           "high": "HIGH_RISK_WEIGHT"}


def test_const_relation_verified_on_corpus(corpus_program):
    ev = verify_const_relation(corpus_program, RELATION, BINDING)
    assert ev.status is EvidenceStatus.VERIFIED


def test_const_relation_refuted_after_weight_edit():
    src = "LOW_RISK_WEIGHT = 1.0\nMID_RISK_WEIGHT = 3.0\nHIGH_RISK_WEIGHT = 5.0\n"
    ev = verify_const_relation(parse_program(src), RELATION, BINDING)
    assert ev.status is EvidenceStatus.REFUTED


def test_const_relation_unknown_on_missing_binding(corpus_program):
    binding = dict(BINDING, high="HIGH_RISK_WEIGT")  # misspelled
    ev = verify_const_relation(corpus_program, RELATION, binding)
    assert ev.status is EvidenceStatus.UNKNOWN
    assert ev.details["missing"] == ["HIGH_RISK_WEIGT"]


# --- registry / run_verifiers ---------------------------------------------------------


def test_run_verifiers_corpus_map(corpus_rationale, corpus_program):
    evidence = run_verifiers(corpus_rationale, corpus_program)
    assert set(evidence) == {"C1", "C6", "C8", "C11"}
    for cid, ev in evidence.items():
        assert ev.status is EvidenceStatus.VERIFIED, (cid, ev.details)
        assert ev.claim_id == cid
        assert ev.subject_hash == corpus_program.source_hash


def test_run_verifiers_zero_hints():
    r = parse_rationale('rationale z\nclaim A "a" { informal: "a"; }\nroot A\n')
    prog = parse_program("def f(x): return x\n")
    assert run_verifiers(r, prog) == {}


def test_run_verifiers_stale_hash(corpus_rationale):
    other = parse_program("def f(x): return x\n")
    with pytest.raises(StaleSubjectError):
        run_verifiers(corpus_rationale, other)


# --- abstract domain properties ----------------------------------------------------


def gen_abstract(rng, depth=2):
    kinds = ["exact", "anynum", "strlits", "anystr", "list", "enum", "top"]
    if depth > 0:
        kinds.append("record")
    kind = rng.choice(kinds)
    if kind == "exact":
        return ExactNum(Fraction(rng.randint(-3, 3)))
    if kind == "anynum":
        return AnyNum()
    if kind == "strlits":
        return StrLits(frozenset(rng.sample(["a", "b", "c", "d"], rng.randint(1, 3))))
    if kind == "anystr":
        return AnyStr()
    if kind == "list":
        return ListOfStrLits(
            frozenset(rng.sample(["a", "b", "c"], rng.randint(0, 2))),
            rng.random() < 0.5)
    if kind == "enum":
        return EnumStr(frozenset(rng.sample(["x", "y", "z"], rng.randint(1, 2))))
    if kind == "record":
        fields = tuple(
            (name, gen_abstract(rng, depth - 1))
            for name in rng.sample(["f1", "f2", "f3"], rng.randint(1, 2)))
        return RecordShape(fields)
    return TOP


def test_join_over_approximates_both():
    rng = random.Random(99)
    for _ in range(500):
        a, b = gen_abstract(rng), gen_abstract(rng)
        joined = join(a, b)
        assert leq(a, joined), (a, b, joined)
        assert leq(b, joined), (a, b, joined)


def test_join_commutative_on_samples():
    rng = random.Random(123)
    for _ in range(300):
        a, b = gen_abstract(rng), gen_abstract(rng)
        assert join(a, b) == join(b, a)


# --- soundness vs the interpreter -----------------------------------------------------


COUNTRIES = ["AA", "BB", "CC", "XX", "YY", "ZZ"]


def random_aml_case(rng):
    externs = {
        "mitigation_kb": (lambda m: (lambda account, rf: m))(
            Fraction(rng.randint(0, 20), 4)),
        "high_risk_countries": (lambda hr: (lambda: list(hr)))(
            rng.sample(COUNTRIES, rng.randint(0, 3))),
    }
    txns = [
        {"country": rng.choice(COUNTRIES),
         "amount": Fraction(rng.choice([10, 5000, 100000, 250000]))}
        for _ in range(rng.randint(0, 25))
    ]
    profile = rng.sample(["retail", "cash-intensive", "crypto"], rng.randint(0, 2))
    args = [{"id": "acct"}, {
        "transactions": txns,
        "account_age_days": Fraction(rng.randint(0, 720)),
        "customer_profile": profile,
        "prior_alerts": Fraction(rng.randint(0, 3)),
    }]
    return args, externs


def test_inventory_sound_vs_interpreter(corpus_program):
    ev = verify_string_inventory(
        corpus_program, "assess_suspicious_activity", "reasons", frozenset(SEVEN))
    assert ev.status is EvidenceStatus.VERIFIED
    inventory = set(ev.details["inventory"])
    rng = random.Random(20240603)
    for _ in range(200):
        args, externs = random_aml_case(rng)
        out = interpret(corpus_program, "assess_suspicious_activity", args, externs)
        assert set(out["reasons"]) <= inventory


def test_ladder_sound_vs_interpreter(corpus_program):
    ev = verify_threshold_ladder(
        corpus_program, "assess_suspicious_activity", "score",
        ("ok", "review", "flag"))
    assert ev.status is EvidenceStatus.VERIFIED
    rank = {"ok": 0, "review": 1, "flag": 2}
    rng = random.Random(20240604)
    observed = []
    for _ in range(200):
        args, externs = random_aml_case(rng)
        out = interpret(corpus_program, "assess_suspicious_activity", args, externs)
        observed.append((out["score"], rank[out["decision"]]))
    # Scores stay on a quarter grid, so the reported (rounded) score equals
    # the decision-determining score and monotonicity must hold exactly.
    observed.sort()
    for (s1, d1), (s2, d2) in zip(observed, observed[1:]):
        assert d1 <= d2, (s1, d1, s2, d2)
