"""Checklist extraction, user judgments, and assurance-status propagation.

The residual checklist holds exactly the leaves lacking Verified evidence and
the decompositions lacking MachineValid verdicts. If every item is accepted
and no machine result is refuting, the root claim is Established; doubting
any item blocks its whole ancestor path. Machine-refuted items may still be
accepted, but then the report carries a warning.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Optional

from .analysis import Evidence, EvidenceStatus
from .inference import InferenceVerdict, VerdictStatus
from .rationale.model import Rationale


class ItemKind(enum.Enum):
    CONJECTURE = "conjecture"
    INFERENCE = "inference"


class JudgmentVerdict(enum.Enum):
    ACCEPTED = "accepted"
    DOUBTED = "doubted"
    PENDING = "pending"


class ClaimState(enum.Enum):
    ESTABLISHED = "established"
    BLOCKED = "blocked"
    OPEN = "open"


INFERENCE_PREFIX = "inf:"


@dataclass(frozen=True)
class ChecklistItem:
    id: str
    kind: ItemKind
    target: str  # claim id (conjecture) or decomposition parent id (inference)
    rendered_text: str
    machine_status: str
    machine_refuted: bool = False  # Refuted evidence / MachineInvalid verdict


@dataclass(frozen=True)
class Judgment:
    item_id: str
    verdict: JudgmentVerdict
    note: str = ""
    timestamp: float = 0.0


@dataclass(frozen=True)
class StatusReport:
    statuses: dict  # claim id -> ClaimState
    warnings: tuple = ()
    root: str = ""

    @property
    def root_established(self) -> bool:
        return self.statuses.get(self.root) is ClaimState.ESTABLISHED


def inference_item_id(parent_id: str) -> str:
    return INFERENCE_PREFIX + parent_id


def _render_inference(r: Rationale, parent_id: str) -> str:
    d = r.decomposition_of(parent_id)
    return "(%s) => %s" % (" && ".join(d.children), parent_id)


def _conjecture_machine_status(evidence: Optional[Evidence]) -> str:
    if evidence is None:
        return "no machine evidence"
    return "%s (%s)" % (evidence.status.value, evidence.verifier)


def _inference_machine_status(verdict: Optional[InferenceVerdict]) -> str:
    if verdict is None:
        return "unchecked"
    return "%s (tier %d)" % (verdict.status.value, verdict.tier)


def extract_checklist(r: Rationale, evidence: dict, verdicts: dict) -> list:
    """Residual items in depth-first tree order. evidence maps claim id ->
    Evidence; verdicts maps decomposition parent id -> InferenceVerdict.
    The item set depends only on machine results, never on judgments."""
    for cid in list(evidence) + list(verdicts):
        if cid not in r.claims:
            raise KeyError("dangling claim id '%s'" % cid)
    items = []
    for cid in r.dfs_order():
        claim = r.claims[cid]
        d = r.decomposition_of(cid)
        if d is not None:
            verdict = verdicts.get(cid)
            if verdict is None or verdict.status is not VerdictStatus.MACHINE_VALID:
                items.append(ChecklistItem(
                    id=inference_item_id(cid),
                    kind=ItemKind.INFERENCE,
                    target=cid,
                    rendered_text=_render_inference(r, cid),
                    machine_status=_inference_machine_status(verdict),
                    machine_refuted=(
                        verdict is not None
                        and verdict.status is VerdictStatus.MACHINE_INVALID),
                ))
        else:
            ev = evidence.get(cid)
            if ev is None or ev.status is not EvidenceStatus.VERIFIED:
                items.append(ChecklistItem(
                    id=cid,
                    kind=ItemKind.CONJECTURE,
                    target=cid,
                    rendered_text="%s: %s" % (claim.title, claim.statement_text()),
                    machine_status=_conjecture_machine_status(ev),
                    machine_refuted=(
                        ev is not None and ev.status is EvidenceStatus.REFUTED),
                ))
    return items


def current_judgments(judgments) -> dict:
    """Last-write-wins resolution of the append-only judgment log; an
    explicit Pending entry clears the item's verdict."""
    out = {}
    for j in judgments:
        if j.verdict is JudgmentVerdict.PENDING:
            out.pop(j.item_id, None)
        else:
            out[j.item_id] = j
    return out


def propagate(r: Rationale, evidence: dict, verdicts: dict, judgments=()) -> StatusReport:
    """Bottom-up assurance statuses; a pure function of its inputs."""
    latest = current_judgments(judgments)
    warnings = []
    states = {}

    def leaf_state(cid):
        ev = evidence.get(cid)
        j = latest.get(cid)
        if j is not None and j.verdict is JudgmentVerdict.DOUBTED:
            return ClaimState.BLOCKED
        if ev is not None and ev.status is EvidenceStatus.VERIFIED:
            return ClaimState.ESTABLISHED
        if j is not None and j.verdict is JudgmentVerdict.ACCEPTED:
            if ev is not None and ev.status is EvidenceStatus.REFUTED:
                warnings.append(
                    "conjecture %s accepted despite a machine refutation" % cid)
            return ClaimState.ESTABLISHED
        if ev is not None and ev.status is EvidenceStatus.REFUTED:
            return ClaimState.BLOCKED
        return ClaimState.OPEN

    def visit(cid):
        if cid in states:
            return states[cid]
        d = r.decomposition_of(cid)
        if d is None:
            state = leaf_state(cid)
        else:
            child_states = [visit(child) for child in d.children]
            verdict = verdicts.get(cid)
            j = latest.get(inference_item_id(cid))
            doubted = j is not None and j.verdict is JudgmentVerdict.DOUBTED
            machine_valid = (verdict is not None
                             and verdict.status is VerdictStatus.MACHINE_VALID)
            accepted = j is not None and j.verdict is JudgmentVerdict.ACCEPTED
            if accepted and verdict is not None \
                    and verdict.status is VerdictStatus.MACHINE_INVALID:
                warnings.append(
                    "inference %s accepted despite a machine counterexample" % cid)
            if doubted or any(s is ClaimState.BLOCKED for s in child_states):
                state = ClaimState.BLOCKED
            elif (machine_valid or accepted) and all(
                    s is ClaimState.ESTABLISHED for s in child_states):
                state = ClaimState.ESTABLISHED
            else:
                state = ClaimState.OPEN
        states[cid] = state
        return state

    for cid in r.dfs_order():
        visit(cid)
    return StatusReport(statuses=states, warnings=tuple(warnings), root=r.root)


def whatif(r: Rationale, evidence: dict, verdicts: dict, baseline,
           overlay) -> tuple:
    """(status report, delta) for overlay judgments superseding the baseline;
    the baseline is not mutated and the delta lists exactly the claims whose
    status changed."""
    items = {item.id for item in extract_checklist(r, evidence, verdicts)}
    for j in overlay:
        if j.item_id not in items:
            raise KeyError("unknown checklist item '%s'" % j.item_id)
    before = propagate(r, evidence, verdicts, baseline)
    after = propagate(r, evidence, verdicts, list(baseline) + list(overlay))
    delta = sorted(
        cid for cid in after.statuses
        if after.statuses[cid] is not before.statuses.get(cid))
    return after, delta


# --- Export formats (checklist-md v1 / checklist-json v1) --------------------


def checklist_to_markdown(items, judgments=()) -> str:
    latest = current_judgments(judgments)
    lines = ["# Review checklist (checklist-md v1)", ""]
    if not items:
        lines.append("Checklist empty - root established pending no items.")
        lines.append("")
        return "\n".join(lines)
    for i, item in enumerate(items, start=1):
        lines.append("## %d. [%s] %s" % (i, item.kind.value, item.id))
        lines.append("")
        lines.append(item.rendered_text)
        lines.append("")
        lines.append("- machine status: %s" % item.machine_status)
        if item.machine_refuted:
            lines.append("- flagged: machine counterexample attached")
        j = latest.get(item.id)
        lines.append("- judgment: %s" % (j.verdict.value if j else "pending"))
        note = j.note if j and j.note else ""
        lines.append("- note: %s" % note)
        lines.append("")
    return "\n".join(lines)


def checklist_item_to_json(item: ChecklistItem) -> dict:
    return {
        "id": item.id,
        "kind": item.kind.value,
        "target": item.target,
        "renderedText": item.rendered_text,
        "machineStatus": item.machine_status,
        "machineRefuted": item.machine_refuted,
    }


def checklist_to_json(items, indent=2) -> str:
    return json.dumps([checklist_item_to_json(i) for i in items], indent=indent)
