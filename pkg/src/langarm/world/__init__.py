"""Deterministic desk-scale world simulator."""

from .files import WorldLoadError, load_world, save_world, trace_to_jsonl, world_from_dict, world_to_dict
from .observe import (
    Observation,
    normalized,
    observe,
    read_observation,
    render_observation,
    render_positions,
)
from .sim import NothingGrasped, StepTrace, execute, step, try_place
from .state import (
    DEFAULT_EE_HALF_EXTENTS,
    GRASP_TOLERANCE_MM,
    ObjectSpec,
    SimEvent,
    WorldState,
    Zone,
)

__all__ = [
    "DEFAULT_EE_HALF_EXTENTS",
    "GRASP_TOLERANCE_MM",
    "NothingGrasped",
    "ObjectSpec",
    "Observation",
    "SimEvent",
    "StepTrace",
    "WorldLoadError",
    "WorldState",
    "Zone",
    "execute",
    "load_world",
    "normalized",
    "observe",
    "read_observation",
    "render_observation",
    "render_positions",
    "save_world",
    "step",
    "trace_to_jsonl",
    "try_place",
    "world_from_dict",
    "world_to_dict",
]
