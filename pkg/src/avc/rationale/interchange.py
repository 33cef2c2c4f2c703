"""Canonical JSON interchange form for rationales.

Mirrors the model types one-to-one; formulas are carried as canonical
formula-grammar text. Key order is fixed so serialized output is stable for
golden-file testing. DSL -> JSON -> DSL is the identity on canonical form.
"""

from __future__ import annotations

import json
from fractions import Fraction

from ..logic import syntax as S
from ..logic.parser import parse_formula
from .model import Claim, Decomposition, Ident, Rationale, SubjectRef, VerifyHint

FORMAT = "rationale-interchange"
VERSION = 1


def _hint_value_to_json(value):
    if isinstance(value, Ident):
        return {"kind": "ident", "name": value.name}
    if isinstance(value, str):
        return {"kind": "string", "value": value}
    if isinstance(value, Fraction):
        return {"kind": "number", "value": "%d/%d" % (value.numerator, value.denominator)}
    if isinstance(value, frozenset):
        return {"kind": "set", "values": sorted(value)}
    if isinstance(value, tuple):
        return {"kind": "list", "values": list(value)}
    raise TypeError("unsupported hint value: %r" % (value,))


def _hint_value_from_json(data):
    kind = data["kind"]
    if kind == "ident":
        return Ident(data["name"])
    if kind == "string":
        return data["value"]
    if kind == "number":
        num, den = data["value"].split("/")
        return Fraction(int(num), int(den))
    if kind == "set":
        return frozenset(data["values"])
    if kind == "list":
        return tuple(data["values"])
    raise ValueError("unknown hint value kind %r" % kind)


def rationale_to_json(r: Rationale) -> dict:
    sig = r.signature
    claims = []
    for cid in sorted(r.claims):
        claim = r.claims[cid]
        if claim.formal is not None:
            statement = {"kind": "formal", "formula": S.format_formula(claim.formal)}
        else:
            statement = {"kind": "informal", "text": claim.informal}
        verify = None
        if claim.verify is not None:
            verify = {
                "verifier": claim.verify.verifier,
                "config": [[k, _hint_value_to_json(v)] for k, v in claim.verify.config],
            }
        claims.append({
            "id": claim.id,
            "title": claim.title,
            "statement": statement,
            "verify": verify,
            "note": claim.note,
        })
    return {
        "format": FORMAT,
        "version": VERSION,
        "name": r.name,
        "signature": {
            "sorts": sorted(sig.sorts),
            "functions": {
                name: {"args": list(sig.functions[name][0]),
                       "result": sig.functions[name][1]}
                for name in sorted(sig.functions)
            },
            "predicates": {
                name: list(sig.predicates[name]) for name in sorted(sig.predicates)
            },
            "stringLiterals": sorted(sig.string_literals),
        },
        "root": r.root,
        "claims": claims,
        "decompositions": [
            {"parent": d.parent, "children": list(d.children)}
            for d in r.decompositions
        ],
        "subject": (
            None if r.subject_ref is None
            else {"path": r.subject_ref.path, "sha256": r.subject_ref.sha256}
        ),
    }


def rationale_from_json(data: dict) -> Rationale:
    if data.get("format") != FORMAT or data.get("version") != VERSION:
        raise ValueError("not a %s v%d document" % (FORMAT, VERSION))
    sig_data = data["signature"]
    sig = S.Signature(
        sorts=frozenset(sig_data["sorts"]),
        functions={
            name: (tuple(entry["args"]), entry["result"])
            for name, entry in sig_data["functions"].items()
        },
        predicates={
            name: tuple(args) for name, args in sig_data["predicates"].items()
        },
    )
    claims = {}
    for entry in data["claims"]:
        statement = entry["statement"]
        formal = informal = None
        if statement["kind"] == "formal":
            formal = parse_formula(statement["formula"], sig)
        else:
            informal = statement["text"]
        verify = None
        if entry.get("verify"):
            verify = VerifyHint(
                entry["verify"]["verifier"],
                tuple((k, _hint_value_from_json(v))
                      for k, v in entry["verify"]["config"]))
        claims[entry["id"]] = Claim(
            id=entry["id"], title=entry["title"], formal=formal,
            informal=informal, verify=verify, note=entry.get("note"))
    subject = data.get("subject")
    return Rationale(
        name=data["name"],
        signature=sig,
        root=data["root"],
        claims=claims,
        decompositions=tuple(
            Decomposition(d["parent"], tuple(d["children"]))
            for d in data["decompositions"]),
        subject_ref=None if subject is None
        else SubjectRef(subject["path"], subject["sha256"]),
    )


def dumps(r: Rationale, indent=2) -> str:
    return json.dumps(rationale_to_json(r), indent=indent)


def loads(text: str) -> Rationale:
    return rationale_from_json(json.loads(text))
