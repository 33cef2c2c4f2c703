"""Tier-1 validity: propositional satisfiability search on the negation.

The inference (AND premises) => conclusion is abstracted to its atomized
skeleton; the skeleton is valid iff premises AND NOT conclusion is
unsatisfiable, decided by a small DPLL core (Tseitin translation, unit
propagation, two-way branching). Sound but abstraction-incomplete: a
satisfiable negation only means Unknown for the first-order original.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from ..logic.normalize import (
    AtomTable,  # noqa: F401  (re-exported for callers)
    PAnd, PAtom, PFalse, PIff, PImplies, PNot, POr, PTrue, atomize,
    normalize as normalize_formula,
)
from ..logic.syntax import format_formula
from .result import InferenceVerdict, VerdictStatus

DEFAULT_BUDGET = 100000


class BudgetExceeded(Exception):
    pass


@dataclass
class _Cnf:
    """Clause set under construction. Variables are 1-based ints; literals
    are signed ints. Atom i occupies variable i + 1."""

    n_atoms: int
    clauses: list = field(default_factory=list)
    next_var: int = 1

    def fresh(self) -> int:
        var = self.next_var
        self.next_var += 1
        return var

    def add(self, *lits):
        self.clauses.append(tuple(lits))


def _tseitin(skel, cnf: _Cnf) -> int:
    """Returns a literal equisatisfiably representing skel."""
    if isinstance(skel, PTrue):
        var = cnf.fresh()
        cnf.add(var)
        return var
    if isinstance(skel, PFalse):
        var = cnf.fresh()
        cnf.add(-var)
        return var
    if isinstance(skel, PAtom):
        return skel.index + 1
    if isinstance(skel, PNot):
        return -_tseitin(skel.body, cnf)
    if isinstance(skel, PAnd):
        lits = [_tseitin(p, cnf) for p in skel.parts]
        var = cnf.fresh()
        for lit in lits:
            cnf.add(-var, lit)
        cnf.add(var, *(-lit for lit in lits))
        return var
    if isinstance(skel, POr):
        lits = [_tseitin(p, cnf) for p in skel.parts]
        var = cnf.fresh()
        cnf.add(-var, *lits)
        for lit in lits:
            cnf.add(var, -lit)
        return var
    if isinstance(skel, PImplies):
        a = _tseitin(skel.lhs, cnf)
        b = _tseitin(skel.rhs, cnf)
        var = cnf.fresh()
        cnf.add(-var, -a, b)
        cnf.add(var, a)
        cnf.add(var, -b)
        return var
    if isinstance(skel, PIff):
        a = _tseitin(skel.lhs, cnf)
        b = _tseitin(skel.rhs, cnf)
        var = cnf.fresh()
        cnf.add(-var, -a, b)
        cnf.add(-var, a, -b)
        cnf.add(var, a, b)
        cnf.add(var, -a, -b)
        return var
    raise TypeError("not a skeleton: %r" % (skel,))


def _propagate(clauses, assignment):
    """Unit propagation to fixpoint. Returns False on conflict."""
    changed = True
    while changed:
        changed = False
        for clause in clauses:
            unassigned = None
            satisfied = False
            count = 0
            for lit in clause:
                val = assignment.get(abs(lit))
                if val is None:
                    unassigned = lit
                    count += 1
                elif val == (lit > 0):
                    satisfied = True
                    break
            if satisfied:
                continue
            if count == 0:
                return False
            if count == 1:
                assignment[abs(unassigned)] = unassigned > 0
                changed = True
    return True


def _dpll(clauses, assignment, budget):
    if not _propagate(clauses, assignment):
        return None
    remaining = [v for v in range(1, budget.n_vars + 1) if v not in assignment]
    if not remaining:
        return assignment
    budget.decisions += 1
    if budget.decisions > budget.limit:
        raise BudgetExceeded()
    var = remaining[0]
    for value in (True, False):
        trial = dict(assignment)
        trial[var] = value
        result = _dpll(clauses, trial, budget)
        if result is not None:
            return result
    return None


@dataclass
class _Budget:
    n_vars: int
    limit: int
    decisions: int = 0


def solve_negation(premise_skels, conclusion_skel, n_atoms, budget=DEFAULT_BUDGET):
    """Satisfiability of premises AND NOT conclusion. Returns ("unsat", None),
    ("sat", atom assignment dict) or ("budget", None)."""
    cnf = _Cnf(n_atoms=n_atoms, next_var=n_atoms + 1)
    roots = [_tseitin(p, cnf) for p in premise_skels]
    roots.append(-_tseitin(conclusion_skel, cnf))
    for lit in roots:
        cnf.add(lit)
    tracker = _Budget(n_vars=cnf.next_var - 1, limit=budget)
    try:
        model = _dpll(cnf.clauses, {}, tracker)
    except BudgetExceeded:
        return "budget", None
    if model is None:
        return "unsat", None
    atoms = {}
    for i in range(n_atoms):
        atoms[i] = model.get(i + 1, False)
    return "sat", atoms


def render_countermodel(atoms, table) -> str:
    lines = []
    for idx in sorted(atoms):
        lines.append("%s := %s" % (
            format_formula(table.formulas[idx]), "true" if atoms[idx] else "false"))
    return "; ".join(lines)


def check_tier1(sig, premises, conclusion, budget=DEFAULT_BUDGET) -> InferenceVerdict:
    """MachineValid iff the atomized skeleton of (AND premises -> conclusion)
    is a propositional tautology; Unknown otherwise, with the satisfying
    abstract assignment (or "budget") as diagnostic."""
    started = time.monotonic()
    normalized = [normalize_formula(p) for p in premises]
    normalized.append(normalize_formula(conclusion))
    skels, table = atomize(normalized)
    answer, atoms = solve_negation(skels[:-1], skels[-1], len(table), budget)
    elapsed = time.monotonic() - started
    if answer == "unsat":
        return InferenceVerdict(VerdictStatus.MACHINE_VALID, 1, None, elapsed)
    if answer == "budget":
        return InferenceVerdict(VerdictStatus.UNKNOWN, 1, "budget", elapsed)
    return InferenceVerdict(
        VerdictStatus.UNKNOWN, 1, render_countermodel(atoms, table), elapsed)
