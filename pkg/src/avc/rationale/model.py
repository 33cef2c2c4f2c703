"""Claim-tree data model and structural validation."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from ..logic import syntax as S
from ..logic.syntax import Diagnostic


@dataclass(frozen=True)
class Ident:
    """An identifier-valued hint argument (as opposed to a quoted string)."""

    name: str


HintValue = Union[Ident, str, Fraction, tuple, frozenset]


@dataclass(frozen=True)
class VerifyHint:
    verifier: str
    config: tuple = ()  # ordered (key, HintValue) pairs

    def get(self, key, default=None):
        for k, v in self.config:
            if k == key:
                return v
        return default


@dataclass(frozen=True)
class Claim:
    """A proposition in the rationale. Exactly one of formal/informal is set;
    a claim carrying a verify hint must be a leaf (a conjecture)."""

    id: str
    title: str
    formal: Optional[S.Formula] = None
    informal: Optional[str] = None
    verify: Optional[VerifyHint] = None
    note: Optional[str] = None

    def __post_init__(self):
        if (self.formal is None) == (self.informal is None):
            raise ValueError(
                "claim %s must have exactly one of a formal or informal statement"
                % self.id)

    @property
    def is_formal(self) -> bool:
        return self.formal is not None

    def statement_text(self) -> str:
        if self.formal is not None:
            return S.format_formula(self.formal)
        return self.informal


@dataclass(frozen=True)
class Decomposition:
    """Claim parent decomposed into ordered children, asserting the inference
    (AND children) => parent."""

    parent: str
    children: tuple

    def __post_init__(self):
        if not self.children:
            raise ValueError("decomposition of %s has no children" % self.parent)


@dataclass(frozen=True)
class SubjectRef:
    path: str
    sha256: str


@dataclass(frozen=True)
class Rationale:
    name: str
    signature: S.Signature
    root: str
    claims: dict  # id -> Claim
    decompositions: tuple = ()
    subject_ref: Optional[SubjectRef] = None

    def __post_init__(self):
        # Canonical order for decompositions (their list order carries no
        # meaning; child order does) and derived string-literal inventory.
        object.__setattr__(
            self, "decompositions",
            tuple(sorted(self.decompositions, key=lambda d: d.parent)))
        literals = set()
        for claim in self.claims.values():
            if claim.formal is not None:
                literals |= S.string_literals_of(claim.formal)
        object.__setattr__(
            self, "signature",
            dataclasses.replace(self.signature, string_literals=frozenset(literals)))

    # -- tree helpers --

    def decomposition_of(self, claim_id) -> Optional[Decomposition]:
        for d in self.decompositions:
            if d.parent == claim_id:
                return d
        return None

    def parent_of(self, claim_id) -> Optional[str]:
        for d in self.decompositions:
            if claim_id in d.children:
                return d.parent
        return None

    def is_leaf(self, claim_id) -> bool:
        return self.decomposition_of(claim_id) is None

    def leaves(self) -> list:
        return [cid for cid in self.claims if self.is_leaf(cid)]

    def dfs_order(self) -> list:
        """Claim ids in depth-first pre-order from the root, children in
        decomposition order."""
        order = []
        stack = [self.root]
        seen = set()
        while stack:
            cid = stack.pop()
            if cid in seen or cid not in self.claims:
                continue
            seen.add(cid)
            order.append(cid)
            d = self.decomposition_of(cid)
            if d:
                stack.extend(reversed(d.children))
        return order


def structural_diagnostics(r: Rationale) -> list:
    """Tree-shape and statement diagnostics (everything except the verifier
    registry check, which validate_structure adds)."""
    out = []
    if r.root not in r.claims:
        out.append(Diagnostic("unknown-id", "root claim '%s' is not defined" % r.root))

    parents_seen = set()
    child_parent = {}
    for d in r.decompositions:
        if d.parent not in r.claims:
            out.append(Diagnostic(
                "unknown-id", "decomposition parent '%s' is not defined" % d.parent))
        if d.parent in parents_seen:
            out.append(Diagnostic(
                "duplicate-decomposition",
                "claim '%s' is decomposed more than once" % d.parent))
        parents_seen.add(d.parent)
        seen_children = set()
        for child in d.children:
            if child not in r.claims:
                out.append(Diagnostic(
                    "unknown-id", "decomposition child '%s' is not defined" % child))
            if child in child_parent or child in seen_children:
                out.append(Diagnostic(
                    "duplicate-child",
                    "claim '%s' appears as a child more than once" % child))
            seen_children.add(child)
            child_parent[child] = d.parent

    if r.root in child_parent:
        out.append(Diagnostic(
            "rootedness", "root claim '%s' is a child of '%s'"
            % (r.root, child_parent[r.root])))

    # Reachability and acyclicity from the root.
    reachable = set()
    stack = [r.root]
    while stack:
        cid = stack.pop()
        if cid in reachable or cid not in r.claims:
            continue
        reachable.add(cid)
        d = next((d for d in r.decompositions if d.parent == cid), None)
        if d:
            stack.extend(d.children)
    orphans = [cid for cid in r.claims if cid not in reachable]
    for cid in sorted(orphans):
        out.append(Diagnostic(
            "orphan", "claim '%s' is not reachable from the root" % cid))

    for cid, claim in r.claims.items():
        if claim.verify is not None and not r.is_leaf(cid):
            out.append(Diagnostic(
                "hint-on-internal",
                "claim '%s' has a verify hint but is not a leaf" % cid))
        if claim.formal is not None:
            for diag in S.well_formed(r.signature, claim.formal):
                out.append(Diagnostic(
                    diag.code, "claim '%s': %s" % (cid, diag.message)))
    return out


def validate_structure(r: Rationale, verifier_names=None) -> list:
    """Empty iff tree invariants hold, formal statements are well-formed and
    every verify hint names a registered verifier kind."""
    out = structural_diagnostics(r)
    if verifier_names is None:
        from ..analysis import VERIFIER_NAMES
        verifier_names = VERIFIER_NAMES
    for cid, claim in r.claims.items():
        if claim.verify is not None and claim.verify.verifier not in verifier_names:
            out.append(Diagnostic(
                "unknown-verifier",
                "claim '%s' names unregistered verifier '%s'"
                % (cid, claim.verify.verifier)))
    return out
