"""Claim-tree model, rationale DSL, and interchange JSON."""

from .model import (  # noqa: F401
    Claim, Decomposition, Ident, Rationale, SubjectRef, VerifyHint,
    structural_diagnostics, validate_structure,
)
from .dsl import (  # noqa: F401
    RationaleError, RationaleSyntaxError, RationaleValidationError,
    parse_rationale, print_rationale,
)
from .interchange import (  # noqa: F401
    rationale_from_json, rationale_to_json,
)
