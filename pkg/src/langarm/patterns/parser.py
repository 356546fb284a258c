"""Parsers for both control-pattern grammars.

Baseline grammar: each axis line is a run of unseparated -1/0/1 digits,
e.g. "Y:-1-1-1-1". Improved grammar: bracketed repetition terms joined by
"+", e.g. "X: [1]*70" or "G: [0]*99 + [1]*1", plus bounded sin/cos
comprehensions like "[cos(t) for t in range(360)]".

Labels are case-insensitive and whitespace around ':', '+', '*' and ','
is ignored; model output formatting jitters and the parser absorbs it.
"""

from __future__ import annotations

import re

from .ast import AxisExpr, Concat, DigitRun, PatternBlock, Repeat, TrigTerm, validate_block
from .errors import (
    DuplicateAxis,
    LexError,
    MissingAxis,
    UnsupportedExpression,
)

_AXIS_LINE = re.compile(r"^\s*(?:output\s*:\s*)?([XYZG])\s*:(.*)$", re.IGNORECASE)

_NUM = r"-?\d+(?:\.\d+)?"

# "[v]*n", "[v1, v2]*n", "[]*0", "[v]" (implicit *1)
_BRACKET_TERM = re.compile(
    rf"^\[\s*((?:{_NUM}\s*(?:,\s*{_NUM}\s*)*)?)\]\s*(?:\*\s*(-?\d+))?$"
)

# "[<expr> for <var> in range(<n>)]"
_COMPREHENSION = re.compile(
    r"^\[\s*(.+?)\s+for\s+([A-Za-z_]\w*)\s+in\s+range\s*\(\s*(\d+)\s*\)\s*\]$"
)

# "amp*fn(freq*t + phase)" with every piece optional except fn and t
_TRIG = re.compile(
    rf"^(?:({_NUM}|-)\s*\*?\s*)?(sin|cos)\s*\(\s*(?:({_NUM})\s*\*\s*)?"
    rf"([A-Za-z_]\w*)\s*(?:([+-])\s*({_NUM}))?\s*\)$"
)


def lex_digit_run(text: str) -> list[int]:
    """Lex an unseparated -1/0/1 digit run into its step values.

    The grammar is prefix-free ('-' always binds to a following '1'), so
    any concatenation of tokens lexes back to exactly the generating
    sequence. Whitespace between tokens is allowed.
    """
    values: list[int] = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c in " \t":
            i += 1
        elif c == "0":
            values.append(0)
            i += 1
        elif c == "1":
            values.append(1)
            i += 1
        elif c == "-":
            if i + 1 < n and text[i + 1] == "1":
                values.append(-1)
                i += 2
            else:
                raise LexError(i, text)
        else:
            raise LexError(i, text)
    return values


def _split_terms(text: str) -> list[str]:
    """Split on '+' at bracket/paren depth zero."""
    terms: list[str] = []
    depth = 0
    cur: list[str] = []
    for ch in text:
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        if ch == "+" and depth == 0:
            terms.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    terms.append("".join(cur).strip())
    return [t for t in terms if t != ""]


def _parse_trig(expr: str, var: str, n: int) -> TrigTerm:
    m = _TRIG.match(expr)
    if not m:
        raise UnsupportedExpression(expr)
    amp_s, fn, freq_s, inner_var, phase_sign, phase_s = m.groups()
    if inner_var != var:
        raise UnsupportedExpression(expr)
    amplitude = 1.0
    if amp_s == "-":
        amplitude = -1.0
    elif amp_s is not None:
        amplitude = float(amp_s)
    frequency = float(freq_s) if freq_s is not None else 1.0
    phase = 0.0
    if phase_s is not None:
        phase = float(phase_s)
        if phase_sign == "-":
            phase = -phase
    return TrigTerm(fn=fn.lower(), amplitude=amplitude, frequency=frequency, phase=phase, n=n)


def _values_term(values: list[float], count: int) -> AxisExpr:
    if count < 0:
        raise UnsupportedExpression(f"negative repeat count *{count}")
    if not values or count == 0:
        return DigitRun(())
    if len(values) == 1:
        return Repeat(values[0], count)
    if all(v in (-1.0, 0.0, 1.0) for v in values):
        return DigitRun(tuple(int(v) for v in values) * count)
    # Mixed non-integer list: keep list-repetition semantics term by term.
    parts = tuple(Repeat(v, 1) for v in values) * count
    return Concat(parts)


def parse_axis_improved(text: str) -> AxisExpr:
    s = text.strip()
    if s == "":
        return DigitRun(())
    parts: list[AxisExpr] = []
    for term in _split_terms(s):
        m = _COMPREHENSION.match(term)
        if m:
            expr, var, n_s = m.groups()
            parts.append(_parse_trig(expr.strip(), var, int(n_s)))
            continue
        m = _BRACKET_TERM.match(term)
        if m:
            values_s, count_s = m.groups()
            values = [float(v) for v in values_s.split(",")] if values_s.strip() else []
            count = int(count_s) if count_s is not None else 1
            parts.append(_values_term(values, count))
            continue
        raise UnsupportedExpression(term)
    if len(parts) == 1:
        return parts[0]
    return Concat(tuple(parts))


def parse_axis_baseline(text: str) -> DigitRun:
    return DigitRun(tuple(lex_digit_run(text)))


def parse_block(text: str, mode: str = "auto", validate: bool = True) -> PatternBlock:
    """Parse pattern text with four labeled axis lines into a block.

    mode selects the grammar: "baseline" (digit runs), "improved"
    (bracket terms), or "auto" which picks per line by the presence of a
    '[' in the payload. Lines that do not carry an axis label are
    ignored, so a block embedded in surrounding prose still parses.
    """
    if mode not in ("baseline", "improved", "auto"):
        raise ValueError(f"unknown parse mode {mode!r}")
    payloads: dict[str, str] = {}
    for line in text.splitlines():
        m = _AXIS_LINE.match(line)
        if not m:
            continue
        label = m.group(1).upper()
        if label in payloads:
            raise DuplicateAxis(label)
        payloads[label] = m.group(2)
    for label in ("X", "Y", "Z", "G"):
        if label not in payloads:
            raise MissingAxis(label)

    improved_seen = False
    axes: dict[str, AxisExpr] = {}
    for label, payload in payloads.items():
        if mode == "baseline":
            use_improved = False
        elif mode == "improved":
            use_improved = True
        else:
            use_improved = "[" in payload
        if use_improved:
            axes[label] = parse_axis_improved(payload)
            improved_seen = True
        else:
            axes[label] = parse_axis_baseline(payload)

    block = PatternBlock(
        x=axes["X"],
        y=axes["Y"],
        z=axes["Z"],
        g=axes["G"],
        source_grammar="improved" if improved_seen else "baseline",
    )
    if validate:
        validate_block(block, strict_integer=(block.source_grammar == "baseline"))
    return block
