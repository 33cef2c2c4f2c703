"""Optional generation front-end.

Renders a prompt embedding the rationale grammar, the user's specification
text and the subject program; calls a provider-agnostic chat-completion
endpoint; validates the returned document with the normal rationale pipeline
and feeds parse diagnostics back for a bounded number of repair rounds.

The adapter never judges or verifies anything itself: its output is a parsed
Rationale (or a failure report) that enters the same validation path as a
hand-written one.
"""

from __future__ import annotations

import json
import os
import urllib.error
import urllib.request
from dataclasses import dataclass, field
from typing import Optional

from .rationale.dsl import RationaleError, parse_rationale
from .rationale.model import Rationale

# Fallback grammar summary when the full docs are not on disk. Kept in sync
# with docs/rationale-dsl.md (rationale v1) and docs/formula-grammar.md
# (formula-grammar v1).
GRAMMAR_SUMMARY = """\
rationale v1 grammar (summary):
  rationale <name>
  sort <Name> ...
  fn <name> : <Sort>, ... -> <Sort>      (constants: fn <name> : <Sort>)
  pred <name> : <Sort>, ...              (propositions: pred <name>)
  claim <id> "<title>" {
    formal: <formula>;     or     informal: "<text>";
    verify: <verifier>(<key>=<value>, ...);      (optional, leaves only)
    note: "<text>";                              (optional)
  }
  decompose <parent> -> [<child>, <child>, ...]
  root <id>
  subject "<path>" sha256:<hex>                  (optional)

formula-grammar v1: quantifiers `forall v:S.` / `exists v:S.`; connectives
`&& || ! -> <->`; membership `t in {"lit", ...}`; comparisons `<= <`;
equality `==`; informal atoms in backticks; identifiers
[A-Za-z_][A-Za-z0-9_]*; string literals double-quoted with \\" and \\\\.

verifier hints: output-shape(fn=..., score=Real, decision={"..."}, reasons=ListStr);
string-inventory(fn=..., sink=...); threshold-ladder(fn=..., score=..., order=["..."]);
const-relation(<logical>=<PROGRAM_CONSTANT>, ...).
"""

PROMPT_TEMPLATE = """\
You are asked to argue that a generated program adequately solves its task.
Produce a structured rationale: a rooted tree of claims in which every
decomposition of a claim C into subclaims C1..Cn asserts the inference
(C1 and ... and Cn) implies C. Claims may be formal (a sentence in the
formula grammar below) or informal (quoted text). Decompose until each leaf
is a conjecture stated precisely enough to be discharged directly, either by
one of the verifier hints below or by a focused human review. Do not assume
the program is correct; propose checkable hypotheses.

Respond with a single document in the rationale v1 format and nothing else.

=== grammar ===
{grammar}

=== specification ===
{spec}

=== program ===
{program}
"""

EMPTY_SPEC_NOTE = "(no specification text was provided; argue from the program alone)"


def render_prompt(spec_text: str, program_source: str, grammar_docs: str = "") -> str:
    """Deterministic prompt instantiation; embeds the specification and
    program verbatim."""
    spec = spec_text.strip() or EMPTY_SPEC_NOTE
    return PROMPT_TEMPLATE.format(
        grammar=grammar_docs.strip() or GRAMMAR_SUMMARY,
        spec=spec,
        program=program_source.rstrip(),
    )


@dataclass(frozen=True)
class AgentConfig:
    endpoint: str
    model: str
    token_env: Optional[str] = None
    max_repair_rounds: int = 3
    sampling: dict = field(default_factory=dict)  # passed through verbatim
    timeout: float = 60.0

    def __post_init__(self):
        if self.max_repair_rounds < 0:
            raise ValueError("max repair rounds must be >= 0")


@dataclass(frozen=True)
class GenerationResult:
    rationale: Optional[Rationale]
    transcript: tuple  # message dicts in request/response order
    repairs_used: int = 0
    error: Optional[str] = None
    diagnostics: tuple = ()

    @property
    def ok(self) -> bool:
        return self.rationale is not None


class AgentError(Exception):
    pass


def _post_chat(cfg: AgentConfig, messages) -> str:
    payload = {"model": cfg.model, "messages": messages}
    payload.update(cfg.sampling)
    request = urllib.request.Request(
        cfg.endpoint,
        data=json.dumps(payload).encode("utf-8"),
        headers={"Content-Type": "application/json"},
        method="POST",
    )
    if cfg.token_env:
        token = os.environ.get(cfg.token_env)
        if token:
            request.add_header("Authorization", "Bearer %s" % token)
    try:
        with urllib.request.urlopen(request, timeout=cfg.timeout) as response:
            body = json.loads(response.read().decode("utf-8"))
    except urllib.error.URLError as exc:
        raise AgentError("endpoint unreachable: %s" % exc) from exc
    except (ValueError, OSError) as exc:
        raise AgentError("malformed endpoint response: %s" % exc) from exc
    try:
        return body["choices"][0]["message"]["content"]
    except (KeyError, IndexError, TypeError) as exc:
        raise AgentError(
            "response lacks choices[0].message.content") from exc


def generate_with_repair(cfg: AgentConfig, prompt: str) -> GenerationResult:
    """Calls the endpoint; on parse/validation failure appends the
    diagnostics as a follow-up message, up to cfg.max_repair_rounds times."""
    messages = [{"role": "user", "content": prompt}]
    transcript = [messages[0]]
    diagnostics = []
    attempts = cfg.max_repair_rounds + 1
    for round_no in range(attempts):
        reply = _post_chat(cfg, messages)
        assistant = {"role": "assistant", "content": reply}
        transcript.append(assistant)
        messages.append(assistant)
        try:
            rationale = parse_rationale(reply)
            return GenerationResult(
                rationale=rationale, transcript=tuple(transcript),
                repairs_used=round_no, diagnostics=tuple(diagnostics))
        except RationaleError as exc:
            diagnostics.append(str(exc))
            if round_no == attempts - 1:
                break
            followup = {
                "role": "user",
                "content": (
                    "That document did not parse as rationale v1:\n%s\n"
                    "Reply with a corrected document and nothing else." % exc),
            }
            transcript.append(followup)
            messages.append(followup)
    return GenerationResult(
        rationale=None, transcript=tuple(transcript),
        repairs_used=cfg.max_repair_rounds,
        error="no valid rationale after %d attempts" % attempts,
        diagnostics=tuple(diagnostics))
