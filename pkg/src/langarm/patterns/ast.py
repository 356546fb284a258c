"""Control-pattern AST, validation, and expansion.

A pattern drives the end effector with one displacement per step along X,
Y, Z (millimeters, each step in [-1, 1]) plus a binary gripper line G.
Axis expressions come in four shapes:

  DigitRun  - an explicit sequence of -1/0/1 steps (the digit-run grammar)
  Repeat    - one value repeated n times ("[v]*n")
  Concat    - concatenation of sub-expressions ("a + b + c")
  TrigTerm  - bounded sine/cosine comprehension ("[cos(t) for t in range(360)]")

TrigTerm arguments are in DEGREES: "range(360)" sweeps one full revolution,
so a cos/sin pair nets out to zero displacement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

from .errors import LengthMismatch, PatternValidationError

AXES = ("x", "y", "z", "g")
AXIS_LABELS = ("X", "Y", "Z", "G")


@dataclass(frozen=True)
class DigitRun:
    """Explicit step values, each in {-1, 0, 1}."""

    values: tuple[int, ...]


@dataclass(frozen=True)
class Repeat:
    """A single value repeated count times."""

    value: float
    count: int


@dataclass(frozen=True)
class Concat:
    parts: tuple["AxisExpr", ...]


@dataclass(frozen=True)
class TrigTerm:
    """amplitude * fn(frequency * t + phase) for t in range(n), t in degrees."""

    fn: str  # "sin" or "cos"
    amplitude: float = 1.0
    frequency: float = 1.0
    phase: float = 0.0
    n: int = 0


AxisExpr = Union[DigitRun, Repeat, Concat, TrigTerm]


@dataclass(frozen=True)
class StepDelta:
    """One step of motion: millimeter displacements plus gripper state."""

    dx: float
    dy: float
    dz: float
    g: int

    def __post_init__(self) -> None:
        for name, v in (("dx", self.dx), ("dy", self.dy), ("dz", self.dz)):
            if abs(v) > 1.0 + 1e-12:
                raise PatternValidationError(f"{name}={v} exceeds the 1 mm step cap")
        if self.g not in (0, 1):
            raise PatternValidationError(f"gripper value {self.g} not in {{0, 1}}")

    @property
    def vector(self) -> tuple[float, float, float]:
        return (self.dx, self.dy, self.dz)


@dataclass(frozen=True)
class PatternBlock:
    """The four labeled axis expressions of one control pattern."""

    x: AxisExpr
    y: AxisExpr
    z: AxisExpr
    g: AxisExpr
    source_grammar: str = "improved"  # "baseline" | "improved"

    def axis(self, name: str) -> AxisExpr:
        return getattr(self, name)


@dataclass(frozen=True)
class Trajectory:
    steps: tuple[StepDelta, ...] = field(default_factory=tuple)
    provenance: str = "parsed"  # "parsed" | "mock_planner" | "remote_planner"

    def __len__(self) -> int:
        return len(self.steps)


def expanded_length(expr: AxisExpr) -> int:
    if isinstance(expr, DigitRun):
        return len(expr.values)
    if isinstance(expr, Repeat):
        return expr.count
    if isinstance(expr, TrigTerm):
        return expr.n
    if isinstance(expr, Concat):
        return sum(expanded_length(p) for p in expr.parts)
    raise TypeError(f"not an axis expression: {expr!r}")


def expand_axis(expr: AxisExpr) -> list[float]:
    if isinstance(expr, DigitRun):
        return [float(v) for v in expr.values]
    if isinstance(expr, Repeat):
        return [float(expr.value)] * expr.count
    if isinstance(expr, TrigTerm):
        fn = math.sin if expr.fn == "sin" else math.cos
        return [
            expr.amplitude * fn(math.radians(expr.frequency * t + expr.phase))
            for t in range(expr.n)
        ]
    if isinstance(expr, Concat):
        out: list[float] = []
        for p in expr.parts:
            out.extend(expand_axis(p))
        return out
    raise TypeError(f"not an axis expression: {expr!r}")


def _validate_axis(name: str, expr: AxisExpr, gripper: bool) -> None:
    if isinstance(expr, DigitRun):
        domain = (0, 1) if gripper else (-1, 0, 1)
        for v in expr.values:
            if v not in domain:
                raise PatternValidationError(
                    f"axis {name.upper()}: digit {v} not in {domain}"
                )
    elif isinstance(expr, Repeat):
        if expr.count < 0:
            raise PatternValidationError(f"axis {name.upper()}: negative repeat count")
        if gripper:
            if expr.value not in (0, 1):
                raise PatternValidationError(
                    f"axis G: gripper value {expr.value} not in {{0, 1}}"
                )
        elif abs(expr.value) > 1.0:
            raise PatternValidationError(
                f"axis {name.upper()}: step value {expr.value} exceeds the 1 mm cap"
            )
    elif isinstance(expr, TrigTerm):
        if gripper:
            raise PatternValidationError("axis G cannot be a trig comprehension")
        if expr.fn not in ("sin", "cos"):
            raise PatternValidationError(f"unknown trig function {expr.fn!r}")
        if abs(expr.amplitude) > 1.0:
            raise PatternValidationError(
                f"trig amplitude {expr.amplitude} exceeds the 1 mm step cap"
            )
        if expr.n < 0:
            raise PatternValidationError("trig range length must be non-negative")
    elif isinstance(expr, Concat):
        for p in expr.parts:
            _validate_axis(name, p, gripper)
    else:
        raise PatternValidationError(f"axis {name.upper()}: bad node {expr!r}")


def validate_block(block: PatternBlock, strict_integer: bool = False) -> None:
    """Check axis domains and caps; raise PatternValidationError on violation.

    strict_integer additionally constrains X/Y/Z to {-1, 0, 1}, the
    baseline-grammar contract.
    """
    for name in ("x", "y", "z"):
        _validate_axis(name, block.axis(name), gripper=False)
    _validate_axis("g", block.g, gripper=True)
    if strict_integer:
        for name in ("x", "y", "z"):
            for v in expand_axis(block.axis(name)):
                if v not in (-1.0, 0.0, 1.0):
                    raise PatternValidationError(
                        f"axis {name.upper()}: value {v} not an integer step"
                    )


def expand(
    block: PatternBlock, lenient: bool = False, provenance: str = "parsed"
) -> Trajectory:
    """Materialize a block into per-step deltas.

    Strict mode (default) requires all four axes to expand to the same
    length and raises LengthMismatch otherwise. Lenient mode pads short
    movement axes with zeros and pads G with its last value (0 if empty).
    """
    cols = {name: expand_axis(block.axis(name)) for name in AXES}
    lengths = {name: len(vals) for name, vals in cols.items()}
    expected = lengths["x"]
    if not lenient:
        for name in ("y", "z", "g"):
            if lengths[name] != expected:
                raise LengthMismatch(name.upper(), expected, lengths[name])
        total = expected
    else:
        total = max(lengths.values(), default=0)
        for name in ("x", "y", "z"):
            cols[name].extend([0.0] * (total - lengths[name]))
        pad_g = cols["g"][-1] if cols["g"] else 0.0
        cols["g"].extend([pad_g] * (total - lengths["g"]))

    steps = tuple(
        StepDelta(cols["x"][t], cols["y"][t], cols["z"][t], int(round(cols["g"][t])))
        for t in range(total)
    )
    return Trajectory(steps=steps, provenance=provenance)


def net_displacement(traj: Trajectory) -> tuple[float, float, float]:
    """Component-wise sum of all step deltas, in millimeters."""
    sx = sy = sz = 0.0
    for s in traj.steps:
        sx += s.dx
        sy += s.dy
        sz += s.dz
    return (sx, sy, sz)
