"""Shipped corpus: the AML triage program and its adequacy rationale."""

from importlib import resources
from pathlib import Path


def corpus_path(name: str) -> Path:
    return Path(resources.files(__package__) / name)


AML_PROGRAM = "aml.sl"
AML_RATIONALE = "aml.rat"


def aml_program_path() -> Path:
    return corpus_path(AML_PROGRAM)


def aml_rationale_path() -> Path:
    return corpus_path(AML_RATIONALE)
