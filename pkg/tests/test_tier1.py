"""Tier-1 propositional core against an exhaustive truth-table oracle."""

import itertools
import random

from avc.inference import VerdictStatus, check_tier1
from avc.inference.tier1 import solve_negation
from avc.logic import syntax as S
from avc.logic.normalize import (
    PAnd, PAtom, PFalse, PIff, PImplies, PNot, POr, PTrue, atomize, normalize,
)

SIG = S.Signature(predicates={"P": ("Str",)})


def informal(i):
    return S.Informal("atom %d" % i)


# --- oracle: exhaustive truth-table evaluation of the raw formulas ----------
# Works directly on formulas whose atoms are informal texts, with no use of
# normalize/atomize, so it is independent of the abstraction it checks.


def tt_eval(phi, row):
    if isinstance(phi, S.TrueF):
        return True
    if isinstance(phi, S.FalseF):
        return False
    if isinstance(phi, S.Informal):
        return row[phi.text]
    if isinstance(phi, S.Not):
        return not tt_eval(phi.body, row)
    if isinstance(phi, S.And):
        return all(tt_eval(p, row) for p in phi.parts)
    if isinstance(phi, S.Or):
        return any(tt_eval(p, row) for p in phi.parts)
    if isinstance(phi, S.Implies):
        return (not tt_eval(phi.lhs, row)) or tt_eval(phi.rhs, row)
    if isinstance(phi, S.Iff):
        return tt_eval(phi.lhs, row) == tt_eval(phi.rhs, row)
    raise TypeError(repr(phi))


def informal_texts(formulas):
    texts = set()
    for phi in formulas:
        for sub in S.subformulas(phi):
            if isinstance(sub, S.Informal):
                texts.add(sub.text)
    return sorted(texts)


def tt_valid(premises, conclusion):
    texts = informal_texts(list(premises) + [conclusion])
    for bits in itertools.product((False, True), repeat=len(texts)):
        row = dict(zip(texts, bits))
        if all(tt_eval(p, row) for p in premises) \
                and not tt_eval(conclusion, row):
            return False
    return True


def gen_prop(rng, atoms, depth):
    if depth == 0:
        return informal(rng.randrange(atoms))
    kind = rng.choice(["atom", "not", "and", "or", "implies", "iff"])
    if kind == "atom":
        return informal(rng.randrange(atoms))
    if kind == "not":
        return S.Not(gen_prop(rng, atoms, depth - 1))
    if kind in ("and", "or"):
        parts = tuple(gen_prop(rng, atoms, depth - 1)
                      for _ in range(rng.randint(2, 3)))
        return S.And(parts) if kind == "and" else S.Or(parts)
    if kind == "implies":
        return S.Implies(gen_prop(rng, atoms, depth - 1),
                         gen_prop(rng, atoms, depth - 1))
    return S.Iff(gen_prop(rng, atoms, depth - 1),
                 gen_prop(rng, atoms, depth - 1))


def run_against_oracle(seed, count):
    rng = random.Random(seed)
    disagreements = []
    for _ in range(count):
        n_atoms = rng.randint(1, 10)
        premises = [gen_prop(rng, n_atoms, rng.randint(0, 3))
                    for _ in range(rng.randint(0, 3))]
        conclusion = gen_prop(rng, n_atoms, rng.randint(0, 3))
        verdict = check_tier1(SIG, premises, conclusion)
        expected = tt_valid(premises, conclusion)
        got = verdict.status is VerdictStatus.MACHINE_VALID
        if got != expected:
            disagreements.append((premises, conclusion, expected, got))
    return disagreements


def test_tier1_matches_truth_table_oracle():
    assert run_against_oracle(20240601, 300) == []


def test_identity_inference_valid():
    p = informal(0)
    assert check_tier1(SIG, [p], p).status is VerdictStatus.MACHINE_VALID


def test_distinct_atoms_unknown_with_countermodel():
    verdict = check_tier1(SIG, [informal(0)], informal(1))
    assert verdict.status is VerdictStatus.UNKNOWN
    assert verdict.tier == 1
    assert "atom 0" in verdict.diagnostic and "atom 1" in verdict.diagnostic


def test_modus_ponens_valid():
    p, q = informal(0), informal(1)
    verdict = check_tier1(SIG, [p, S.Implies(p, q)], q)
    assert verdict.status is VerdictStatus.MACHINE_VALID


def test_budget_yields_unknown():
    rng = random.Random(5)
    premises = [gen_prop(rng, 10, 3) for _ in range(3)]
    conclusion = gen_prop(rng, 10, 3)
    verdict = check_tier1(SIG, premises, conclusion, budget=0)
    assert verdict.status is VerdictStatus.UNKNOWN
    assert verdict.diagnostic == "budget"


def test_machine_invalid_never_from_tier1():
    rng = random.Random(6)
    for _ in range(100):
        premises = [gen_prop(rng, 4, 2)]
        conclusion = gen_prop(rng, 4, 2)
        verdict = check_tier1(SIG, premises, conclusion)
        assert verdict.status in (VerdictStatus.MACHINE_VALID, VerdictStatus.UNKNOWN)


def test_solve_negation_countermodel_restricted_to_atoms():
    p, q = S.Informal("one"), S.Informal("two")
    skels, table = atomize([normalize(p), normalize(q)])
    answer, atoms = solve_negation([skels[0]], skels[1], len(table))
    assert answer == "sat"
    assert set(atoms) == {0, 1}
    assert atoms[0] is True and atoms[1] is False
