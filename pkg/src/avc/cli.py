"""Command-line entry point: parse -> check -> analyze -> checklist -> review.

Exit codes: 0 success, 1 validation/analysis findings, 2 I/O or parse
failure. Solver configuration comes from --solver, the AVC_SOLVER
environment variable, or an avc.toml config file; absence of a solver is not
an error (tier 2 is simply disabled).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from . import agent as agent_mod
from .analysis import EvidenceStatus, StaleSubjectError
from .assurance import checklist_to_json, checklist_to_markdown, extract_checklist
from .inference import SolverConfig, VerdictStatus, emit_smt
from .pipeline import analysis_to_json, cached_analyze, statement_formula
from .rationale.dsl import (
    RationaleError, RationaleSyntaxError, RationaleValidationError,
    parse_rationale,
)
from .rationale.model import validate_structure
from .service import ReviewService, SessionMismatchError
from .subject.parser import SLError, parse_program

EXIT_OK = 0
EXIT_FINDINGS = 1
EXIT_IO = 2

DEFAULT_PORT = 7341


def _load_config(path):
    if path is None:
        default = Path("avc.toml")
        if not default.exists():
            return {}
        path = default
    try:
        with open(path, "rb") as handle:
            return tomllib.load(handle)
    except (OSError, tomllib.TOMLDecodeError) as exc:
        raise SystemExit("cannot read config %s: %s" % (path, exc))


def _solver_from(args, config) -> SolverConfig | None:
    command = args.solver or os.environ.get("AVC_SOLVER") \
        or config.get("solver", {}).get("command")
    if not command:
        return None
    timeout = args.solver_timeout or config.get("solver", {}).get("timeout", 5.0)
    return SolverConfig(command=command, timeout=float(timeout))


def _read(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        print("error: cannot read %s: %s" % (path, exc), file=sys.stderr)
        raise SystemExit(EXIT_IO)


def _parse_rationale_file(path):
    text = _read(path)
    try:
        return parse_rationale(text), text
    except RationaleValidationError as exc:
        for diag in exc.diagnostics:
            print("error: %s" % diag, file=sys.stderr)
        raise SystemExit(EXIT_FINDINGS)
    except RationaleError as exc:
        print("error: %s: %s" % (path, exc), file=sys.stderr)
        raise SystemExit(EXIT_IO)


def _parse_program_file(path):
    text = _read(path)
    try:
        return parse_program(text), text
    except SLError as exc:
        print("error: %s: %s" % (path, exc), file=sys.stderr)
        raise SystemExit(EXIT_IO)


# --- subcommands --------------------------------------------------------------


def cmd_check(args, config) -> int:
    r, _ = _parse_rationale_file(args.rationale)
    diagnostics = validate_structure(r)
    if diagnostics:
        for diag in diagnostics:
            print("error: %s" % diag, file=sys.stderr)
        return EXIT_FINDINGS
    print("%s: %d claims, %d decompositions, root %s - ok"
          % (args.rationale, len(r.claims), len(r.decompositions), r.root))
    return EXIT_OK


def _run_analysis(args, config):
    r, r_text = _parse_rationale_file(args.rationale)
    prog, p_text = _parse_program_file(args.program)
    diagnostics = validate_structure(r)
    if diagnostics:
        for diag in diagnostics:
            print("error: %s" % diag, file=sys.stderr)
        raise SystemExit(EXIT_FINDINGS)
    solver = _solver_from(args, config)
    cache_dir = None
    if not getattr(args, "no_cache", False):
        cache_dir = Path(getattr(args, "cache_dir", None) or ".avc-cache")
    try:
        result = cached_analyze(r, prog, r_text, p_text, solver, cache_dir)
    except StaleSubjectError as exc:
        print("error: stale subject: %s" % exc, file=sys.stderr)
        raise SystemExit(EXIT_FINDINGS)
    return r, prog, result


def _analysis_findings(result) -> bool:
    if any(v.status is VerdictStatus.MACHINE_INVALID
           for v in result.verdicts.values()):
        return True
    return any(e.status is EvidenceStatus.REFUTED
               for e in result.evidence.values())


def cmd_analyze(args, config) -> int:
    r, prog, result = _run_analysis(args, config)
    fmt = args.format
    if fmt == "json":
        payload = analysis_to_json(result)
        payload["summary"] = _summary(result)
        print(json.dumps(payload, indent=2))
    else:
        bullet = "- " if fmt == "markdown" else ""
        if fmt == "markdown":
            print("# Analysis report\n")
        for cid in sorted(result.verdicts):
            v = result.verdicts[cid]
            extra = "" if not v.diagnostic else " [%s]" % _ellipsize(v.diagnostic)
            print("%sinference %s: %s (tier %d)%s"
                  % (bullet, cid, v.status.value, v.tier, extra))
        for cid in sorted(result.evidence):
            e = result.evidence[cid]
            print("%sconjecture %s: %s (%s)"
                  % (bullet, cid, e.status.value, e.verifier))
    return EXIT_FINDINGS if _analysis_findings(result) else EXIT_OK


def _ellipsize(text, limit=120):
    text = " ".join(text.split())
    return text if len(text) <= limit else text[:limit - 3] + "..."


def _summary(result) -> dict:
    verdict_counts = {}
    for v in result.verdicts.values():
        verdict_counts[v.status.value] = verdict_counts.get(v.status.value, 0) + 1
    evidence_counts = {}
    for e in result.evidence.values():
        evidence_counts[e.status.value] = evidence_counts.get(e.status.value, 0) + 1
    return {"inferences": verdict_counts, "evidence": evidence_counts}


def cmd_checklist(args, config) -> int:
    r, prog, result = _run_analysis(args, config)
    items = extract_checklist(r, result.evidence, result.verdicts)
    if args.format == "json":
        print(checklist_to_json(items))
    else:
        print(checklist_to_markdown(items))
    return EXIT_OK


def cmd_review(args, config) -> int:
    r, prog, result = _run_analysis(args, config)
    session = args.session or "%s.session.jsonl" % args.rationale
    port = args.port or config.get("service", {}).get("port", DEFAULT_PORT)
    ui_dir = args.ui
    if ui_dir is None:
        candidate = Path("frontend/dist")
        if (candidate / "index.html").exists():
            ui_dir = candidate
    try:
        service = ReviewService(
            r, prog, result, session_path=session, port=int(port), ui_dir=ui_dir)
        service.start()
    except SessionMismatchError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_FINDINGS
    except OSError as exc:
        print("error: cannot bind port %s: %s" % (port, exc), file=sys.stderr)
        return EXIT_IO
    print("review service listening on %s (session: %s)"
          % (service.base_url(), session))
    if ui_dir:
        print("serving UI assets from %s" % ui_dir)
    try:
        service._thread.join()
    except KeyboardInterrupt:
        service.stop()
    return EXIT_OK


def cmd_smt(args, config) -> int:
    r, _ = _parse_rationale_file(args.rationale)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    for d in r.decompositions:
        premises = [statement_formula(r.claims[c]) for c in d.children]
        conclusion = statement_formula(r.claims[d.parent])
        script = emit_smt(r.signature, premises, conclusion)
        target = outdir / ("%s.smt2" % d.parent)
        target.write_text(script, encoding="utf-8")
        written.append(target)
    for path in written:
        print(path)
    return EXIT_OK


def cmd_agent_generate(args, config) -> int:
    agent_cfg_data = config.get("agent", {})
    endpoint = args.endpoint or agent_cfg_data.get("endpoint")
    model = args.model or agent_cfg_data.get("model")
    if not endpoint or not model:
        print("error: agent endpoint and model are required "
              "(flags or [agent] in avc.toml)", file=sys.stderr)
        return EXIT_IO
    cfg = agent_mod.AgentConfig(
        endpoint=endpoint, model=model,
        token_env=args.token_env or agent_cfg_data.get("token_env"),
        max_repair_rounds=args.max_repairs)
    spec_text = _read(args.spec)
    program_text = _read(args.program)
    grammar = _grammar_docs()
    prompt = agent_mod.render_prompt(spec_text, program_text, grammar)
    try:
        result = agent_mod.generate_with_repair(cfg, prompt)
    except agent_mod.AgentError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_IO
    if not result.ok:
        print("error: %s" % result.error, file=sys.stderr)
        for diag in result.diagnostics:
            print("  %s" % diag, file=sys.stderr)
        return EXIT_FINDINGS
    from .rationale.dsl import print_rationale
    Path(args.out).write_text(print_rationale(result.rationale), encoding="utf-8")
    print("wrote %s (%d repair rounds used)" % (args.out, result.repairs_used))
    return EXIT_OK


def _grammar_docs() -> str:
    chunks = []
    for name in ("docs/rationale-dsl.md", "docs/formula-grammar.md"):
        path = Path(name)
        if path.exists():
            chunks.append(path.read_text(encoding="utf-8"))
    return "\n\n".join(chunks)


# --- argument parsing -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="avc",
        description="Machine-check structured adequacy rationales and emit "
                    "review checklists.")
    parser.add_argument("--config", help="path to avc.toml (default: ./avc.toml)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate a rationale document")
    p.add_argument("rationale")
    p.set_defaults(func=cmd_check)

    def analysis_flags(p):
        p.add_argument("rationale")
        p.add_argument("program")
        p.add_argument("--solver", help="solver command template ({file} or stdin)")
        p.add_argument("--solver-timeout", type=float, default=None)
        p.add_argument("--no-cache", action="store_true")
        p.add_argument("--cache-dir", default=None)

    p = sub.add_parser("analyze", help="check inferences and run verifiers")
    analysis_flags(p)
    p.add_argument("--format", choices=("text", "json", "markdown"), default="text")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("checklist", help="emit the residual review checklist")
    analysis_flags(p)
    p.add_argument("--format", choices=("markdown", "json"), default="markdown")
    p.set_defaults(func=cmd_checklist)

    p = sub.add_parser("review", help="serve the interactive review API/UI")
    analysis_flags(p)
    p.add_argument("--port", type=int, default=None)
    p.add_argument("--session", default=None,
                   help="session log path (default: <rationale>.session.jsonl)")
    p.add_argument("--ui", default=None, help="directory of built UI assets")
    p.set_defaults(func=cmd_review)

    p = sub.add_parser("smt", help="emit tier-2 SMT scripts without solving")
    p.add_argument("rationale")
    p.add_argument("outdir")
    p.set_defaults(func=cmd_smt)

    p = sub.add_parser("agent", help="generation front-end")
    agent_sub = p.add_subparsers(dest="agent_command", required=True)
    g = agent_sub.add_parser("generate", help="ask an agent for a rationale")
    g.add_argument("--spec", required=True)
    g.add_argument("--program", required=True)
    g.add_argument("--out", required=True)
    g.add_argument("--endpoint", default=None)
    g.add_argument("--model", default=None)
    g.add_argument("--token-env", default=None)
    g.add_argument("--max-repairs", type=int, default=3)
    g.set_defaults(func=cmd_agent_generate)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = _load_config(args.config)
    return args.func(args, config)


if __name__ == "__main__":
    sys.exit(main())
