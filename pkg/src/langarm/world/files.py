"""World definition files (JSON) and trace export (JSON lines)."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from ..geometry import Aabb
from .sim import StepTrace
from .state import DEFAULT_EE_HALF_EXTENTS, ObjectSpec, WorldState, Zone


class WorldLoadError(Exception):
    pass


def _vec(value: Any, name: str) -> tuple[float, float, float]:
    if not isinstance(value, (list, tuple)) or len(value) != 3:
        raise WorldLoadError(f"{name} must be a 3-element list")
    return (float(value[0]), float(value[1]), float(value[2]))


def world_from_dict(data: dict) -> WorldState:
    try:
        ee = data.get("ee", {})
        objects = []
        for o in data.get("objects", []):
            objects.append(
                ObjectSpec(
                    id=str(o["id"]),
                    color=str(o.get("color", "other")),
                    center=_vec(o["center"], f"object {o['id']} center"),
                    half_extents=_vec(o["half_extents"], f"object {o['id']} half_extents"),
                    attribute=str(o.get("attribute", "")),
                    graspable=bool(o.get("graspable", not o.get("fixed", False))),
                    fixed=bool(o.get("fixed", False)),
                )
            )
        zones = []
        for z in data.get("zones", []):
            zones.append(
                Zone(
                    id=str(z["id"]),
                    label=str(z.get("label", z["id"])),
                    aabb=Aabb(_vec(z["min"], "zone min"), _vec(z["max"], "zone max")),
                    attribute=str(z.get("attribute", "")),
                )
            )
        return WorldState(
            ee_pos=_vec(ee.get("pos", [0, 0, 0]), "ee.pos"),
            ee_half_extents=_vec(
                ee.get("half_extents", list(DEFAULT_EE_HALF_EXTENTS)), "ee.half_extents"
            ),
            gripper=str(ee.get("gripper", "open")),
            objects=tuple(sorted(objects, key=lambda o: o.id)),
            zones=tuple(zones),
        )
    except WorldLoadError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise WorldLoadError(f"bad world definition: {e}") from e


def world_to_dict(world: WorldState) -> dict:
    return {
        "ee": {
            "pos": list(world.ee_pos),
            "half_extents": list(world.ee_half_extents),
            "gripper": world.gripper,
        },
        "grasped": world.grasped,
        "tick": world.tick,
        "force_z": world.force_z,
        "objects": [
            {
                "id": o.id,
                "color": o.color,
                "center": list(o.center),
                "half_extents": list(o.half_extents),
                "attribute": o.attribute,
                "graspable": o.graspable,
                "fixed": o.fixed,
            }
            for o in world.objects
        ],
        "zones": [
            {
                "id": z.id,
                "label": z.label,
                "min": list(z.aabb.lo),
                "max": list(z.aabb.hi),
                "attribute": z.attribute,
            }
            for z in world.zones
        ],
    }


def load_world(path: str | Path) -> WorldState:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise WorldLoadError(f"cannot load world file {path}: {e}") from e
    return world_from_dict(data)


def save_world(world: WorldState, path: str | Path) -> None:
    Path(path).write_text(json.dumps(world_to_dict(world), indent=2) + "\n")


def trace_to_jsonl(trace: list[StepTrace]) -> str:
    lines = []
    for t in trace:
        lines.append(
            json.dumps(
                {
                    "tick": t.tick,
                    "ee_pos": list(t.ee_pos),
                    "events": [
                        {"tick": e.tick, "kind": e.kind, "target": e.target, "detail": e.detail}
                        for e in t.events
                    ],
                },
                separators=(",", ":"),
            )
        )
    return "\n".join(lines) + ("\n" if lines else "")
