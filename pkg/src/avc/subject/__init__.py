"""Subject language: parser, AST, reference interpreter."""

from . import ast  # noqa: F401
from .ast import Program, FunctionDef, ExternDecl, always_returns  # noqa: F401
from .parser import (  # noqa: F401
    SLError, SLSyntaxError, format_expr, parse_program, print_program,
)
from .interp import (  # noqa: F401
    Interpreter, SLRuntimeError, coerce_value, extract_constants, interpret,
    round_half_away,
)
