"""Verifier registry: matches verify hints to analyzers and runs them."""

from __future__ import annotations

import dataclasses

from ..logic import syntax as S
from ..rationale.model import Claim, Ident, Rationale
from ..subject.ast import Program
from .domain import EnumStr
from .verifiers import (
    AnalysisError, Evidence, EvidenceStatus,
    verify_const_relation, verify_output_shape, verify_string_inventory,
    verify_threshold_ladder,
)


class StaleSubjectError(Exception):
    pass


def _ident_arg(claim: Claim, key: str) -> str:
    value = claim.verify.get(key)
    if isinstance(value, Ident):
        return value.name
    if isinstance(value, str):
        return value
    raise AnalysisError(
        "hint for claim %s is missing identifier argument '%s'" % (claim.id, key))


def _run_output_shape(prog: Program, claim: Claim) -> Evidence:
    function = _ident_arg(claim, "fn")
    shape_spec = {}
    for key, value in claim.verify.config:
        if key == "fn":
            continue
        if isinstance(value, Ident):
            if value.name in ("Real", "Int"):
                shape_spec[key] = value.name
            elif value.name == "ListStr":
                shape_spec[key] = "ListStr"
            else:
                raise AnalysisError(
                    "unsupported shape constraint '%s' for field '%s'"
                    % (value.name, key))
        elif isinstance(value, frozenset):
            shape_spec[key] = EnumStr(value)
        else:
            raise AnalysisError("unsupported shape constraint for field '%s'" % key)
    return verify_output_shape(prog, function, shape_spec)


def _claimed_set_from_formula(claim: Claim) -> frozenset:
    if claim.formal is None:
        raise AnalysisError(
            "claim %s has no formal statement to take the claimed set from" % claim.id)
    for sub in S.subformulas(claim.formal):
        if isinstance(sub, S.MemberOf):
            return frozenset(sub.choices)
    raise AnalysisError(
        "claim %s has no membership set in its formal statement" % claim.id)


def _run_string_inventory(prog: Program, claim: Claim) -> Evidence:
    function = _ident_arg(claim, "fn")
    sink = _ident_arg(claim, "sink")
    claimed = _claimed_set_from_formula(claim)
    return verify_string_inventory(prog, function, sink, claimed)


def _run_threshold_ladder(prog: Program, claim: Claim) -> Evidence:
    function = _ident_arg(claim, "fn")
    score = _ident_arg(claim, "score")
    order = claim.verify.get("order")
    if not isinstance(order, tuple):
        raise AnalysisError(
            "hint for claim %s needs an order=[...] argument" % claim.id)
    return verify_threshold_ladder(prog, function, score, order)


def _run_const_relation(prog: Program, claim: Claim) -> Evidence:
    if claim.formal is None:
        raise AnalysisError(
            "claim %s needs a formal relation for const-relation" % claim.id)
    binding = {}
    for key, value in claim.verify.config:
        if not isinstance(value, Ident):
            raise AnalysisError(
                "const-relation binding '%s' must name a program constant" % key)
        binding[key] = value.name
    return verify_const_relation(prog, claim.formal, binding)


VERIFIERS = {
    "output-shape": _run_output_shape,
    "string-inventory": _run_string_inventory,
    "threshold-ladder": _run_threshold_ladder,
    "const-relation": _run_const_relation,
}

VERIFIER_NAMES = frozenset(VERIFIERS)


def run_verifiers(r: Rationale, prog: Program) -> dict:
    """Dispatches every hinted leaf to its verifier; returns claim id ->
    Evidence, total over hinted leaves. Adapter or analysis errors become
    Unknown evidence so one bad hint cannot sink the run."""
    if r.subject_ref is not None and r.subject_ref.sha256 != prog.source_hash:
        raise StaleSubjectError(
            "rationale is bound to subject %s with hash %s, but the program "
            "hash is %s" % (r.subject_ref.path, r.subject_ref.sha256,
                            prog.source_hash))
    evidence = {}
    for cid in r.dfs_order():
        claim = r.claims[cid]
        if claim.verify is None or not r.is_leaf(cid):
            continue
        runner = VERIFIERS.get(claim.verify.verifier)
        if runner is None:
            result = Evidence(
                cid, claim.verify.verifier, EvidenceStatus.UNKNOWN,
                {"error": "unknown verifier '%s'" % claim.verify.verifier},
                prog.source_hash)
        else:
            try:
                result = runner(prog, claim)
            except AnalysisError as exc:
                result = Evidence(
                    cid, claim.verify.verifier, EvidenceStatus.UNKNOWN,
                    {"error": str(exc)}, prog.source_hash)
        evidence[cid] = dataclasses.replace(result, claim_id=cid)
    return evidence
