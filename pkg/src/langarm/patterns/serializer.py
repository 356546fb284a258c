"""Canonical text form for pattern blocks.

The improved form uses the documented token spacing "X: [v]*n + ...";
the baseline form is an unseparated digit run per axis. Serialization is
byte-stable for a given AST, and parse_block(serialize(b)) expands to the
same step sequence as b.
"""

from __future__ import annotations

from .ast import (
    AXIS_LABELS,
    AxisExpr,
    Concat,
    DigitRun,
    PatternBlock,
    Repeat,
    TrigTerm,
    expand_axis,
)
from .errors import NotRepresentable


def _fmt(v: float) -> str:
    if float(v) == int(v):
        return str(int(v))
    return repr(float(v))


def _runs(values: tuple[int, ...]) -> list[tuple[int, int]]:
    out: list[tuple[int, int]] = []
    for v in values:
        if out and out[-1][0] == v:
            out[-1] = (v, out[-1][1] + 1)
        else:
            out.append((v, 1))
    return out


def _improved_terms(expr: AxisExpr) -> list[str]:
    if isinstance(expr, DigitRun):
        if not expr.values:
            return ["[]*0"]
        return [f"[{v}]*{n}" for v, n in _runs(expr.values)]
    if isinstance(expr, Repeat):
        if expr.count == 0:
            return ["[]*0"]
        return [f"[{_fmt(expr.value)}]*{expr.count}"]
    if isinstance(expr, TrigTerm):
        if expr.amplitude == 1.0:
            amp = ""
        elif expr.amplitude == -1.0:
            amp = "-"
        else:
            amp = f"{_fmt(expr.amplitude)}*"
        arg = "t" if expr.frequency == 1.0 else f"{_fmt(expr.frequency)}*t"
        if expr.phase > 0:
            arg += f" + {_fmt(expr.phase)}"
        elif expr.phase < 0:
            arg += f" - {_fmt(-expr.phase)}"
        return [f"[{amp}{expr.fn}({arg}) for t in range({expr.n})]"]
    if isinstance(expr, Concat):
        terms: list[str] = []
        for p in expr.parts:
            terms.extend(t for t in _improved_terms(p) if t != "[]*0")
        return terms or ["[]*0"]
    raise TypeError(f"not an axis expression: {expr!r}")


def _has_trig(expr: AxisExpr) -> bool:
    if isinstance(expr, TrigTerm):
        return True
    if isinstance(expr, Concat):
        return any(_has_trig(p) for p in expr.parts)
    return False


def serialize_axis(expr: AxisExpr, grammar: str) -> str:
    if grammar == "improved":
        return " + ".join(_improved_terms(expr))
    if grammar == "baseline":
        if _has_trig(expr):
            raise NotRepresentable(
                "trig comprehensions have no baseline digit-run form"
            )
        tokens: list[str] = []
        for v in expand_axis(expr):
            if v not in (-1.0, 0.0, 1.0):
                raise NotRepresentable(
                    f"value {v} is not an integer step; baseline requires -1/0/1"
                )
            tokens.append(str(int(v)))
        return "".join(tokens)
    raise ValueError(f"unknown grammar {grammar!r}")


def serialize(block: PatternBlock, grammar: str = "improved") -> str:
    """Render a block as four labeled lines in the requested grammar."""
    lines = []
    for label, name in zip(AXIS_LABELS, ("x", "y", "z", "g")):
        lines.append(f"{label}: {serialize_axis(block.axis(name), grammar)}")
    return "\n".join(lines)
