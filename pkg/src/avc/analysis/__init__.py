"""Static verifiers for leaf conjectures and the hint registry."""

from .domain import (  # noqa: F401
    TOP, AnyNum, AnyStr, EnumStr, ExactNum, ListOfStrLits, RecordShape,
    StrLits, Top, join, leq,
)
from .verifiers import (  # noqa: F401
    AnalysisError, Evidence, EvidenceStatus, list_summaries,
    verify_const_relation, verify_output_shape, verify_string_inventory,
    verify_threshold_ladder,
)
from .registry import (  # noqa: F401
    StaleSubjectError, VERIFIER_NAMES, VERIFIERS, run_verifiers,
)
