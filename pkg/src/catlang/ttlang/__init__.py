"""A small extensional type theory with 1, products, Eq, Sigma and Pi,
interpreted into comprehension categories."""

from .errors import (FORMER_UNAVAILABLE, NOT_A_SECTION, TYPE_MISMATCH, TTError, TTSyntaxError,
                     TTTypeError, UnboundVariable)
from .interp import (Interpretation, Interpreter, check_equal, comparison_failures,
                     eq_reflection_failures, interpret)
from .syntax import Program, Scope, parse, parse_judgment

SyntaxError = TTSyntaxError
TypeError = TTTypeError
