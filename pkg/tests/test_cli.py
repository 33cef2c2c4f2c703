"""CLI subcommands, exit codes, output formats."""

import json
import re
import shutil
from pathlib import Path

import pytest

from avc.cli import main
from avc.corpus import aml_program_path, aml_rationale_path


@pytest.fixture()
def corpus_files(tmp_path, monkeypatch):
    rationale = tmp_path / "aml.rat"
    program = tmp_path / "aml.sl"
    shutil.copy(aml_rationale_path(), rationale)
    shutil.copy(aml_program_path(), program)
    monkeypatch.chdir(tmp_path)
    return rationale, program


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_check_corpus_ok(corpus_files, capsys):
    rationale, _ = corpus_files
    code, out, err = run(capsys, "check", str(rationale))
    assert code == 0
    assert "14 claims" in out


def test_check_duplicate_child_exit_1(corpus_files, capsys):
    rationale, _ = corpus_files
    text = rationale.read_text().replace(
        "decompose C3 -> [C11, C12]", "decompose C3 -> [C11, C12]\n"
        "# C12 re-parented under C2 as well")
    text = text.replace("decompose C2 -> [C4, C5, C6, C7]",
                        "decompose C2 -> [C4, C5, C6, C7, C12]")
    bad = rationale.parent / "bad.rat"
    bad.write_text(text)
    code, out, err = run(capsys, "check", str(bad))
    assert code == 1
    assert "child more than once" in err or "duplicate" in err


def test_check_missing_file_exit_2(capsys):
    code, out, err = run(capsys, "check", "/no/such/file.rat")
    assert code == 2


def test_analyze_text_report(corpus_files, capsys):
    rationale, program = corpus_files
    code, out, err = run(capsys, "analyze", str(rationale), str(program),
                         "--no-cache")
    assert code == 0
    assert "inference C0: machine-valid (tier 1)" in out
    assert "inference C3: unknown" in out  # no solver configured
    assert "conjecture C1: verified (output-shape)" in out
    assert out.count("verified") == 4


def test_analyze_json_stable(corpus_files, capsys):
    rationale, program = corpus_files
    code1, out1, _ = run(capsys, "analyze", str(rationale), str(program),
                         "--no-cache", "--format", "json")
    code2, out2, _ = run(capsys, "analyze", str(rationale), str(program),
                         "--no-cache", "--format", "json")
    assert code1 == code2 == 0
    payload = json.loads(out1)
    assert payload["summary"]["inferences"] == {"machine-valid": 1, "unknown": 4}
    assert payload["summary"]["evidence"] == {"verified": 4}
    # timing fields vary between runs; the rest must be identical
    scrub = lambda text: re.sub(r'"elapsed": [0-9.e-]+', '"elapsed": 0', text)
    assert scrub(out1) == scrub(out2)


def test_analyze_cache_roundtrip(corpus_files, capsys, tmp_path):
    rationale, program = corpus_files
    cache = tmp_path / "cache"
    code1, out1, _ = run(capsys, "analyze", str(rationale), str(program),
                         "--cache-dir", str(cache), "--format", "json")
    assert code1 == 0
    assert list(cache.glob("*.json"))
    code2, out2, _ = run(capsys, "analyze", str(rationale), str(program),
                         "--cache-dir", str(cache), "--format", "json")
    assert code2 == 0
    assert json.loads(out2)["summary"] == json.loads(out1)["summary"]


def test_analyze_stale_subject_exit_1(corpus_files, capsys):
    rationale, program = corpus_files
    program.write_text(program.read_text() + "\n# drift\n")
    code, out, err = run(capsys, "analyze", str(rationale), str(program),
                         "--no-cache")
    assert code == 1
    assert "stale" in err


def test_checklist_markdown_without_solver(corpus_files, capsys):
    rationale, program = corpus_files
    code, out, _ = run(capsys, "checklist", str(rationale), str(program),
                       "--no-cache")
    assert code == 0
    assert out.count("## ") == 9  # includes the unproven C3 inference


def test_checklist_json(corpus_files, capsys):
    rationale, program = corpus_files
    code, out, _ = run(capsys, "checklist", str(rationale), str(program),
                       "--no-cache", "--format", "json")
    assert code == 0
    items = json.loads(out)
    assert [i["id"] for i in items] == [
        "inf:C_R", "inf:C2", "C4", "C5", "inf:C7", "C9", "C10", "inf:C3", "C12"]


def test_checklist_empty_banner(tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    (tmp_path / "t.rat").write_text(
        'rationale t\nclaim A "a" { informal: "a"; }\nclaim B "b" '
        '{ formal: `fact`; verify: string-inventory(fn=f, sink=out); }\n'
        "decompose A -> [B]\nroot A\n")
    # a rationale with only machine-checkable content would need real
    # verifiers; instead check the trivial zero-checks report path
    (tmp_path / "t2.rat").write_text(
        'rationale t2\nclaim A "a" { informal: "a"; }\nroot A\n')
    (tmp_path / "p.sl").write_text("def f(x): return x\n")
    code, out, _ = run(capsys, "analyze", "t2.rat", "p.sl", "--no-cache")
    assert code == 0
    assert "inference" not in out and "conjecture" not in out


def test_smt_subcommand_writes_scripts(corpus_files, capsys, tmp_path):
    rationale, _ = corpus_files
    outdir = tmp_path / "scripts"
    code, out, _ = run(capsys, "smt", str(rationale), str(outdir))
    assert code == 0
    names = sorted(p.name for p in outdir.glob("*.smt2"))
    assert names == ["C0.smt2", "C2.smt2", "C3.smt2", "C7.smt2", "C_R.smt2"]
    c3 = (outdir / "C3.smt2").read_text()
    golden = Path(__file__).parent / "golden" / "c3_decomposition.smt2"
    assert c3 == golden.read_text()


def test_solver_flag_threaded_through(corpus_files, capsys, tmp_path):
    rationale, program = corpus_files
    solver = tmp_path / "fake_solver.sh"
    solver.write_text("#!/bin/sh\ncat > /dev/null\necho unsat\n")
    solver.chmod(0o755)
    code, out, _ = run(capsys, "analyze", str(rationale), str(program),
                       "--no-cache", "--solver", str(solver))
    assert code == 0
    # the blindly-unsat stub upgrades every tier-1 unknown to machine-valid,
    # which exercises the tier-2 wiring end to end
    assert "inference C3: machine-valid (tier 2)" in out


def test_config_file_solver(corpus_files, capsys, tmp_path, monkeypatch):
    rationale, program = corpus_files
    solver = tmp_path / "fake_solver.sh"
    solver.write_text("#!/bin/sh\ncat > /dev/null\necho unknown\n")
    solver.chmod(0o755)
    (Path.cwd() / "avc.toml").write_text(
        '[solver]\ncommand = "%s"\ntimeout = 2.0\n' % solver)
    code, out, _ = run(capsys, "analyze", str(rationale), str(program), "--no-cache")
    assert code == 0
    assert "inference C3: unknown (tier 2)" in out
