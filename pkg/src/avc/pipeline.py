"""Analysis orchestration: inference checks plus verifier runs, with JSON
serialization of results and a content-hash keyed cache."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .analysis import Evidence, EvidenceStatus, run_verifiers
from .inference import InferenceVerdict, SolverConfig, VerdictStatus, check_inference
from .logic.syntax import Informal
from .rationale.model import Claim, Rationale


def statement_formula(claim: Claim):
    """The claim's statement as a formula; informal statements become a
    single informal atom."""
    if claim.formal is not None:
        return claim.formal
    return Informal(claim.informal)


@dataclass(frozen=True)
class AnalysisResult:
    evidence: dict   # claim id -> Evidence
    verdicts: dict   # decomposition parent id -> InferenceVerdict


def analyze(r: Rationale, prog, solver: Optional[SolverConfig] = None) -> AnalysisResult:
    """Checks every decomposition inference and runs every hinted verifier."""
    verdicts = {}
    for d in r.decompositions:
        premises = [statement_formula(r.claims[c]) for c in d.children]
        conclusion = statement_formula(r.claims[d.parent])
        verdicts[d.parent] = check_inference(r.signature, premises, conclusion, solver)
    evidence = run_verifiers(r, prog)
    return AnalysisResult(evidence=evidence, verdicts=verdicts)


# --- JSON forms ---------------------------------------------------------------


def evidence_to_json(e: Evidence) -> dict:
    return {
        "claimId": e.claim_id,
        "verifier": e.verifier,
        "status": e.status.value,
        "details": e.details,
        "subjectHash": e.subject_hash,
    }


def evidence_from_json(data: dict) -> Evidence:
    return Evidence(
        claim_id=data["claimId"],
        verifier=data["verifier"],
        status=EvidenceStatus(data["status"]),
        details=data["details"],
        subject_hash=data["subjectHash"],
    )


def verdict_to_json(v: InferenceVerdict) -> dict:
    return {
        "status": v.status.value,
        "tier": v.tier,
        "diagnostic": v.diagnostic,
        "elapsed": v.elapsed,
    }


def verdict_from_json(data: dict) -> InferenceVerdict:
    return InferenceVerdict(
        status=VerdictStatus(data["status"]),
        tier=data["tier"],
        diagnostic=data["diagnostic"],
        elapsed=data["elapsed"],
    )


def analysis_to_json(result: AnalysisResult) -> dict:
    return {
        "evidence": {cid: evidence_to_json(e)
                     for cid, e in sorted(result.evidence.items())},
        "inferences": {cid: verdict_to_json(v)
                       for cid, v in sorted(result.verdicts.items())},
    }


def analysis_from_json(data: dict) -> AnalysisResult:
    return AnalysisResult(
        evidence={cid: evidence_from_json(e) for cid, e in data["evidence"].items()},
        verdicts={cid: verdict_from_json(v) for cid, v in data["inferences"].items()},
    )


# --- Cache --------------------------------------------------------------------


def cache_key(rationale_text: str, program_text: str,
              solver: Optional[SolverConfig]) -> str:
    digest = hashlib.sha256()
    digest.update(rationale_text.encode("utf-8"))
    digest.update(b"\x00")
    digest.update(program_text.encode("utf-8"))
    digest.update(b"\x00")
    if solver is not None and solver.enabled:
        digest.update(solver.command.encode("utf-8"))
    return digest.hexdigest()


def cached_analyze(r: Rationale, prog, rationale_text: str, program_text: str,
                   solver: Optional[SolverConfig], cache_dir: Optional[Path]) -> AnalysisResult:
    if cache_dir is None:
        return analyze(r, prog, solver)
    cache_dir = Path(cache_dir)
    entry = cache_dir / ("%s.json" % cache_key(rationale_text, program_text, solver))
    if entry.exists():
        try:
            return analysis_from_json(json.loads(entry.read_text()))
        except (ValueError, KeyError):
            pass  # stale or corrupt entry; recompute
    result = analyze(r, prog, solver)
    cache_dir.mkdir(parents=True, exist_ok=True)
    entry.write_text(json.dumps(analysis_to_json(result), indent=2))
    return result
