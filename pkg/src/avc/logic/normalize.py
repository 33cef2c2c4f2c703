"""Canonical formula normalization and propositional atomization.

normalize rewrites a formula into a canonical form: bound variables are
renamed by quantifier depth (so alpha-variants collide), double negations
drop, universal quantifiers distribute over conjunctions and existentials
over disjunctions, and n-ary connectives are flattened, deduplicated and
sorted by structural serialization. It is idempotent.

atomize abstracts normalized formulas into propositional skeletons: every
maximal subformula whose top constructor is not a propositional connective
becomes an atom, with structurally identical subformulas sharing one atom.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import syntax as S
from .syntax import (
    And, Apply, Compare, Equals, Exists, FalseF, Forall, Iff, Implies,
    Informal, MemberOf, Not, NumLit, Or, PredApp, StrLit, TrueF, Var,
    make_and, make_or, serialize,
)


def canonical_var(depth: int) -> str:
    return "_v%d" % depth


def normalize(phi: S.Formula) -> S.Formula:
    """Canonical form. Requires phi well-formed; preserves well-formedness."""
    return _norm(phi, {}, 0)


def _norm(phi, env, depth):
    if isinstance(phi, (TrueF, FalseF, Informal)):
        return phi
    if isinstance(phi, PredApp):
        return PredApp(phi.pred, tuple(_rename(t, env) for t in phi.args))
    if isinstance(phi, Equals):
        return Equals(_rename(phi.lhs, env), _rename(phi.rhs, env))
    if isinstance(phi, Compare):
        return Compare(phi.rel, _rename(phi.lhs, env), _rename(phi.rhs, env))
    if isinstance(phi, MemberOf):
        return MemberOf(_rename(phi.term, env), tuple(sorted(phi.choices)))
    if isinstance(phi, Not):
        body = _norm(phi.body, env, depth)
        if isinstance(body, Not):
            return body.body
        return Not(body)
    if isinstance(phi, And):
        return _assemble(And, make_and, (_norm(p, env, depth) for p in phi.parts))
    if isinstance(phi, Or):
        return _assemble(Or, make_or, (_norm(p, env, depth) for p in phi.parts))
    if isinstance(phi, Implies):
        return Implies(_norm(phi.lhs, env, depth), _norm(phi.rhs, env, depth))
    if isinstance(phi, Iff):
        return Iff(_norm(phi.lhs, env, depth), _norm(phi.rhs, env, depth))
    if isinstance(phi, Forall):
        name = canonical_var(depth + 1)
        body = _norm(phi.body, {**env, phi.var: name}, depth + 1)
        if isinstance(body, And):
            return _assemble(
                And, make_and, (Forall(name, phi.sort, p) for p in body.parts))
        return Forall(name, phi.sort, body)
    if isinstance(phi, Exists):
        name = canonical_var(depth + 1)
        body = _norm(phi.body, {**env, phi.var: name}, depth + 1)
        if isinstance(body, Or):
            return _assemble(
                Or, make_or, (Exists(name, phi.sort, p) for p in body.parts))
        return Exists(name, phi.sort, body)
    raise TypeError("not a formula: %r" % (phi,))


def _assemble(nary, smart, parts):
    flat = []
    for part in parts:
        if isinstance(part, nary):
            flat.extend(part.parts)
        else:
            flat.append(part)
    unique = {}
    for part in flat:
        unique.setdefault(serialize(part), part)
    return smart(unique[key] for key in sorted(unique))


def _rename(term, env):
    if isinstance(term, Var):
        return Var(env.get(term.name, term.name), term.sort)
    if isinstance(term, Apply):
        return Apply(term.func, tuple(_rename(a, env) for a in term.args))
    return term


# --- Propositional skeletons -----------------------------------------------


@dataclass(frozen=True)
class PAtom:
    index: int


@dataclass(frozen=True)
class PTrue:
    pass


@dataclass(frozen=True)
class PFalse:
    pass


@dataclass(frozen=True)
class PNot:
    body: object


@dataclass(frozen=True)
class PAnd:
    parts: tuple


@dataclass(frozen=True)
class POr:
    parts: tuple


@dataclass(frozen=True)
class PImplies:
    lhs: object
    rhs: object


@dataclass(frozen=True)
class PIff:
    lhs: object
    rhs: object


@dataclass
class AtomTable:
    """Maps atom indices back to the subformulas they abstract."""

    formulas: list = field(default_factory=list)
    _index: dict = field(default_factory=dict)

    def intern(self, phi) -> int:
        key = serialize(phi)
        found = self._index.get(key)
        if found is not None:
            return found
        idx = len(self.formulas)
        self.formulas.append(phi)
        self._index[key] = idx
        return idx

    def __len__(self):
        return len(self.formulas)


def atomize(phis) -> tuple:
    """(skeletons, atom table) for already-normalized formulas; structurally
    identical non-connective subformulas share an atom index."""
    table = AtomTable()
    skeletons = [_skeleton(phi, table) for phi in phis]
    return skeletons, table


def _skeleton(phi, table):
    if isinstance(phi, TrueF):
        return PTrue()
    if isinstance(phi, FalseF):
        return PFalse()
    if isinstance(phi, Not):
        return PNot(_skeleton(phi.body, table))
    if isinstance(phi, And):
        return PAnd(tuple(_skeleton(p, table) for p in phi.parts))
    if isinstance(phi, Or):
        return POr(tuple(_skeleton(p, table) for p in phi.parts))
    if isinstance(phi, Implies):
        return PImplies(_skeleton(phi.lhs, table), _skeleton(phi.rhs, table))
    if isinstance(phi, Iff):
        return PIff(_skeleton(phi.lhs, table), _skeleton(phi.rhs, table))
    return PAtom(table.intern(phi))


def eval_skeleton(skel, assignment) -> bool:
    """Evaluates a skeleton under an atom-index truth assignment."""
    if isinstance(skel, PTrue):
        return True
    if isinstance(skel, PFalse):
        return False
    if isinstance(skel, PAtom):
        return assignment[skel.index]
    if isinstance(skel, PNot):
        return not eval_skeleton(skel.body, assignment)
    if isinstance(skel, PAnd):
        return all(eval_skeleton(p, assignment) for p in skel.parts)
    if isinstance(skel, POr):
        return any(eval_skeleton(p, assignment) for p in skel.parts)
    if isinstance(skel, PImplies):
        return (not eval_skeleton(skel.lhs, assignment)) or eval_skeleton(skel.rhs, assignment)
    if isinstance(skel, PIff):
        return eval_skeleton(skel.lhs, assignment) == eval_skeleton(skel.rhs, assignment)
    raise TypeError("not a skeleton: %r" % (skel,))
