#!/usr/bin/env python3
"""Regenerates frontend/tests/fixtures from the shipped corpus.

The UI tests stub the review service with these files, so they must be
byte-stable and derived from the real analysis pipeline. The scenario
mirrors a solver-assisted run (the C3 decomposition machine-valid), which is
the 8-item checklist the UI acceptance flow walks through.
"""

import json
from pathlib import Path

from avc.assurance import (
    Judgment, JudgmentVerdict, checklist_item_to_json, extract_checklist,
    propagate, whatif,
)
from avc.corpus import aml_program_path, aml_rationale_path
from avc.inference import InferenceVerdict, VerdictStatus
from avc.pipeline import analyze
from avc.rationale.dsl import parse_rationale
from avc.rationale.interchange import rationale_to_json
from avc.subject.parser import parse_program

OUT = Path(__file__).resolve().parent.parent / "frontend" / "tests" / "fixtures"


def status_payload(r, evidence, verdicts, judgments):
    report = propagate(r, evidence, verdicts, judgments)
    return {
        "statuses": {cid: report.statuses[cid].value
                     for cid in sorted(report.statuses)},
        "warnings": list(report.warnings),
        "root": report.root,
        "rootEstablished": report.root_established,
    }


def main():
    r = parse_rationale(aml_rationale_path().read_text())
    prog = parse_program(aml_program_path().read_text())
    result = analyze(r, prog, solver=None)
    verdicts = dict(result.verdicts)
    verdicts["C3"] = InferenceVerdict(VerdictStatus.MACHINE_VALID, 2)
    evidence = result.evidence

    items = extract_checklist(r, evidence, verdicts)
    assert [i.id for i in items] == [
        "inf:C_R", "inf:C2", "C4", "C5", "inf:C7", "C9", "C10", "C12"]

    OUT.mkdir(parents=True, exist_ok=True)

    def write(name, payload):
        (OUT / name).write_text(json.dumps(payload, indent=2) + "\n")

    write("rationale.json", rationale_to_json(r))
    write("checklist.json", [checklist_item_to_json(i) for i in items])
    write("status_initial.json", status_payload(r, evidence, verdicts, []))
    write("status_doubt_c12.json", status_payload(
        r, evidence, verdicts, [Judgment("C12", JudgmentVerdict.DOUBTED)]))

    accepted = []
    sequence = []
    for item in items:
        accepted.append(Judgment(item.id, JudgmentVerdict.ACCEPTED))
        sequence.append({
            "itemId": item.id,
            "status": status_payload(r, evidence, verdicts, list(accepted)),
        })
    write("status_accept_seq.json", sequence)

    report, delta = whatif(r, evidence, verdicts, accepted,
                           [Judgment("C9", JudgmentVerdict.DOUBTED)])
    write("whatif_doubt_c9.json", {
        "status": {cid: report.statuses[cid].value
                   for cid in sorted(report.statuses)},
        "delta": delta,
    })
    baseline_report, empty_delta = whatif(r, evidence, verdicts, accepted, [])
    write("whatif_empty.json", {
        "status": {cid: baseline_report.statuses[cid].value
                   for cid in sorted(baseline_report.statuses)},
        "delta": empty_delta,
    })
    print("fixtures written to %s" % OUT)


if __name__ == "__main__":
    main()
