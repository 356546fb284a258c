"""Immutable world snapshots: end effector, cubes, obstacles, and zones.

All positions are millimeters. Snapshots are frozen dataclasses; the
simulator returns new snapshots instead of mutating, so any number of
readers can share one safely.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from ..geometry import Aabb, Vec3, ZERO

# Tolerance between EE position and object center for a grasp to latch.
GRASP_TOLERANCE_MM = 5.0

# EE collision body: a 10 mm cube centered on the tool point. Small enough
# that the canonical 71-step avoidance pattern clears its fixture obstacle.
DEFAULT_EE_HALF_EXTENTS: Vec3 = (5.0, 5.0, 5.0)


@dataclass(frozen=True)
class ObjectSpec:
    """A cube or obstacle on the desk."""

    id: str
    color: str
    center: Vec3
    half_extents: Vec3
    attribute: str = ""
    graspable: bool = True
    fixed: bool = False

    def __post_init__(self) -> None:
        if not all(h > 0 for h in self.half_extents):
            raise ValueError(f"object {self.id}: half_extents must be positive")
        if self.fixed and self.graspable:
            raise ValueError(f"object {self.id}: fixed objects are never graspable")

    @property
    def aabb(self) -> Aabb:
        return Aabb.from_center(self.center, self.half_extents)


@dataclass(frozen=True)
class Zone:
    """A labeled cuboid region, e.g. a safe operating volume or a drop target."""

    id: str
    label: str
    aabb: Aabb
    attribute: str = ""

    def __post_init__(self) -> None:
        if not all(l < h for l, h in zip(self.aabb.lo, self.aabb.hi)):
            raise ValueError(f"zone {self.id}: aabb min must be < max on every axis")


@dataclass(frozen=True)
class SimEvent:
    """Something the simulator noticed while stepping."""

    tick: int
    kind: str  # collision | grasp | release | penetration | zone_enter | zone_exit | goal_reached
    target: str | None = None
    detail: str = ""


@dataclass(frozen=True)
class WorldState:
    ee_pos: Vec3 = ZERO
    ee_vel: Vec3 = ZERO
    ee_half_extents: Vec3 = DEFAULT_EE_HALF_EXTENTS
    gripper: str = "open"  # "open" | "closed"
    grasped: str | None = None
    grasp_offset: Vec3 = ZERO
    objects: tuple[ObjectSpec, ...] = field(default_factory=tuple)
    zones: tuple[Zone, ...] = field(default_factory=tuple)
    force_z: float = 0.0
    tick: int = 0

    def __post_init__(self) -> None:
        ids = [o.id for o in self.objects]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate object ids")
        if self.grasped is not None:
            obj = self.object(self.grasped)
            if obj is None or not obj.graspable:
                raise ValueError(f"grasped id {self.grasped!r} is not a graspable object")

    def object(self, object_id: str) -> ObjectSpec | None:
        for o in self.objects:
            if o.id == object_id:
                return o
        return None

    def zone(self, zone_id: str) -> Zone | None:
        for z in self.zones:
            if z.id == zone_id:
                return z
        return None

    def by_color(self, color: str) -> ObjectSpec | None:
        """First object of the given color, by id order."""
        matches = sorted((o for o in self.objects if o.color == color), key=lambda o: o.id)
        return matches[0] if matches else None

    @property
    def ee_aabb(self) -> Aabb:
        return Aabb.from_center(self.ee_pos, self.ee_half_extents)

    def with_object(self, obj: ObjectSpec) -> "WorldState":
        rest = tuple(o for o in self.objects if o.id != obj.id)
        return replace(self, objects=tuple(sorted(rest + (obj,), key=lambda o: o.id)))
