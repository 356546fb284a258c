"""The fixed-order observation list and its text form.

Order is always: grasped flag, EE position, EE velocity, red cube
position, blue cube position, force on the EE in z. Missing cubes render
as [null]. The rendered text is valid JSON, so the reference reader is
json-based; integral coordinates render without a decimal point while
the force entry always keeps one.
"""

from __future__ import annotations

import json

from .state import WorldState

Observation = list  # six entries; position entries may be None when absent


def observe(world: WorldState) -> Observation:
    red = world.by_color("red")
    blue = world.by_color("blue")
    return [
        [world.grasped is not None],
        list(world.ee_pos),
        list(world.ee_vel),
        list(red.center) if red is not None else None,
        list(blue.center) if blue is not None else None,
        [world.force_z],
    ]


def _num(v: float) -> str:
    if float(v) == int(v):
        return str(int(v))
    return repr(float(v))


def _entry(entry, force: bool = False) -> str:
    if entry is None:
        return "[null]"
    parts = []
    for v in entry:
        if isinstance(v, bool):
            parts.append("true" if v else "false")
        elif force:
            parts.append(repr(float(v)))
        else:
            parts.append(_num(v))
    return "[" + ", ".join(parts) + "]"


def render_observation(obs: Observation) -> str:
    parts = [_entry(e) for e in obs[:-1]] + [_entry(obs[-1], force=True)]
    return "[" + ", ".join(parts) + "]"


def render_positions(world: WorldState) -> str:
    """Compact positions line: EE first, then the red and blue cubes."""
    entries = [list(world.ee_pos)]
    for color in ("red", "blue"):
        obj = world.by_color(color)
        if obj is not None:
            entries.append(list(obj.center))
    return "[" + ", ".join(_entry(e) for e in entries) + "]"


def read_observation(text: str) -> Observation:
    """Parse a rendered observation back into the list-of-entries form."""
    raw = json.loads(text)
    out = []
    for i, entry in enumerate(raw):
        if entry is None or entry == [None]:
            out.append(None)
        elif i == 0:
            out.append([bool(entry[0])])
        else:
            out.append([float(v) for v in entry])
    return out


def normalized(obs: Observation) -> Observation:
    """Coerce numbers to float so rendered/parsed observations compare equal."""
    out = []
    for i, entry in enumerate(obs):
        if entry is None:
            out.append(None)
        elif i == 0:
            out.append([bool(entry[0])])
        else:
            out.append([float(v) for v in entry])
    return out
