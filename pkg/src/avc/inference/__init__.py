"""Two-tier inference validity checking: propositional core plus SMT solver."""

from .result import InferenceVerdict, SolverConfig, VerdictStatus  # noqa: F401
from .tier1 import DEFAULT_BUDGET, check_tier1, solve_negation  # noqa: F401
from .smt import SmtEmitError, emit_smt  # noqa: F401
from .driver import check_inference, check_tier2, run_solver  # noqa: F401
