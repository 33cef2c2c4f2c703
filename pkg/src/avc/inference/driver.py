"""Tier-2 solver process driver and the combined inference check."""

from __future__ import annotations

import re
import shlex
import subprocess
import tempfile
import time
from pathlib import Path

from .result import InferenceVerdict, SolverConfig, VerdictStatus
from .smt import emit_smt
from .tier1 import DEFAULT_BUDGET, check_tier1

_ANSWER_RE = re.compile(r"^(sat|unsat|unknown)\s*$")


def run_solver(script: str, cfg: SolverConfig):
    """Runs the configured solver on an SMT-LIB script. Returns
    (answer, tail) where answer is "sat"/"unsat"/"unknown" and tail is the
    output following the answer line, or (None, reason) on any failure.
    Never raises on solver problems."""
    argv = shlex.split(cfg.command)
    if not argv:
        return None, "empty solver command"
    uses_file = any("{file}" in part for part in argv)
    tmp_path = None
    try:
        if uses_file:
            with tempfile.NamedTemporaryFile(
                    "w", suffix=".smt2", delete=False) as handle:
                handle.write(script)
                tmp_path = handle.name
            argv = [part.replace("{file}", tmp_path) for part in argv]
            stdin_data = None
        else:
            stdin_data = script
        try:
            proc = subprocess.run(
                argv, input=stdin_data, capture_output=True, text=True,
                timeout=cfg.timeout)
        except FileNotFoundError:
            return None, "solver not found: %s" % argv[0]
        except subprocess.TimeoutExpired:
            return None, "timeout after %gs" % cfg.timeout
        except OSError as exc:
            return None, "solver launch failed: %s" % exc
        lines = proc.stdout.splitlines()
        for i, line in enumerate(lines):
            match = _ANSWER_RE.match(line.strip())
            if match:
                return match.group(1), "\n".join(lines[i + 1:]).strip()
        detail = proc.stdout.strip() or proc.stderr.strip()
        return None, "malformed solver output: %s" % (detail[:500] or "<empty>")
    finally:
        if tmp_path:
            Path(tmp_path).unlink(missing_ok=True)


def check_tier2(sig, premises, conclusion, cfg: SolverConfig) -> InferenceVerdict:
    """unsat => MachineValid; sat => MachineInvalid with the solver's model
    text; unknown/timeout/launch failure => Unknown with the reason."""
    started = time.monotonic()
    # (get-model) after check-sat; harmless error output when unsat.
    script = emit_smt(sig, premises, conclusion) + "(get-model)\n"
    answer, tail = run_solver(script, cfg)
    elapsed = time.monotonic() - started
    if answer == "unsat":
        return InferenceVerdict(VerdictStatus.MACHINE_VALID, 2, None, elapsed)
    if answer == "sat":
        return InferenceVerdict(VerdictStatus.MACHINE_INVALID, 2, tail or "sat", elapsed)
    if answer == "unknown":
        return InferenceVerdict(VerdictStatus.UNKNOWN, 2, "solver answered unknown", elapsed)
    return InferenceVerdict(VerdictStatus.UNKNOWN, 2, tail, elapsed)


def check_inference(sig, premises, conclusion, cfg=None,
                    budget=DEFAULT_BUDGET) -> InferenceVerdict:
    """Tier 1 first; if it cannot decide and a solver is enabled, tier 2.
    Returns the strongest verdict (a tier-1 MachineValid is never revisited)."""
    first = check_tier1(sig, premises, conclusion, budget)
    if first.status is VerdictStatus.MACHINE_VALID:
        return first
    if cfg is None or not cfg.enabled:
        return first
    second = check_tier2(sig, premises, conclusion, cfg)
    if second.status is VerdictStatus.UNKNOWN:
        diagnostic = "tier1: %s | tier2: %s" % (first.diagnostic, second.diagnostic)
        return InferenceVerdict(
            VerdictStatus.UNKNOWN, 2, diagnostic, first.elapsed + second.elapsed)
    return second
