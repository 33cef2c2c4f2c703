"""Verdict and solver-configuration types for inference checking."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional


class VerdictStatus(enum.Enum):
    MACHINE_VALID = "machine-valid"
    MACHINE_INVALID = "machine-invalid"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class InferenceVerdict:
    status: VerdictStatus
    tier: int
    diagnostic: Optional[str] = None
    elapsed: float = 0.0

    def __post_init__(self):
        # Tier-1 satisfiability of the negated skeleton is abstraction-
        # incomplete: it may never claim invalidity, only Unknown.
        if self.status is VerdictStatus.MACHINE_INVALID and self.tier != 2:
            raise ValueError("MachineInvalid can only be produced by tier 2")


@dataclass(frozen=True)
class SolverConfig:
    """External SMT solver invocation. command is a shell-style template;
    a {file} placeholder receives the script path, otherwise the script is
    piped on standard input."""

    command: str
    timeout: float = 5.0
    enabled: bool = True

    def __post_init__(self):
        if self.timeout <= 0:
            raise ValueError("solver timeout must be positive")
