"""Motion-pattern DSL: parse, validate, expand, and serialize control patterns."""

from .ast import (
    AXES,
    AXIS_LABELS,
    AxisExpr,
    Concat,
    DigitRun,
    PatternBlock,
    Repeat,
    StepDelta,
    Trajectory,
    TrigTerm,
    expand,
    expand_axis,
    expanded_length,
    net_displacement,
    validate_block,
)
from .errors import (
    DuplicateAxis,
    LengthMismatch,
    LexError,
    MissingAxis,
    NotRepresentable,
    PatternError,
    PatternValidationError,
    UnsupportedExpression,
)
from .parser import lex_digit_run, parse_axis_improved, parse_block
from .serializer import serialize, serialize_axis

__all__ = [
    "AXES",
    "AXIS_LABELS",
    "AxisExpr",
    "Concat",
    "DigitRun",
    "DuplicateAxis",
    "LengthMismatch",
    "LexError",
    "MissingAxis",
    "NotRepresentable",
    "PatternBlock",
    "PatternError",
    "PatternValidationError",
    "Repeat",
    "StepDelta",
    "Trajectory",
    "TrigTerm",
    "UnsupportedExpression",
    "expand",
    "expand_axis",
    "expanded_length",
    "lex_digit_run",
    "net_displacement",
    "parse_axis_improved",
    "parse_block",
    "serialize",
    "serialize_axis",
    "validate_block",
]
