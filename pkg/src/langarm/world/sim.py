"""Deterministic step-by-step execution of trajectories.

The simulator has no dynamics: each step translates the end effector by
one delta, carries any grasped object rigidly, and reports everything
anomalous (collisions, penetrations, zone transitions) as events rather
than failures.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from ..geometry import Aabb, Vec3, add, dist, sub
from ..patterns import StepDelta, Trajectory
from .state import GRASP_TOLERANCE_MM, ObjectSpec, SimEvent, WorldState


class NothingGrasped(Exception):
    """try_place was called while the gripper holds nothing."""


@dataclass(frozen=True)
class StepTrace:
    tick: int
    ee_pos: Vec3
    events: tuple[SimEvent, ...]


def _zone_membership(world: WorldState, pos: Vec3) -> set[str]:
    return {z.id for z in world.zones if z.aabb.contains_point(pos)}


def _contact_force(ee_box: Aabb, center_z: float, fixed: list[ObjectSpec]) -> float:
    """-1.0 when the EE box presses a fixed surface from above, else 0.0."""
    for obj in fixed:
        box = obj.aabb
        xy_touch = all(
            ee_box.lo[i] < box.hi[i] and box.lo[i] < ee_box.hi[i] for i in range(2)
        )
        if xy_touch and ee_box.lo[2] <= box.hi[2] and center_z > obj.center[2]:
            return -1.0
    return 0.0


def step(world: WorldState, delta: StepDelta) -> tuple[WorldState, list[SimEvent]]:
    """Advance one tick. Returns the new snapshot and any events."""
    tick = world.tick + 1
    events: list[SimEvent] = []
    move = (delta.dx, delta.dy, delta.dz)
    new_pos = add(world.ee_pos, move)

    grasped = world.grasped
    grasp_offset = world.grasp_offset
    gripper = world.gripper
    objects = {o.id: o for o in world.objects}

    # Carried object travels rigidly with the EE.
    if grasped is not None:
        carried = objects[grasped]
        objects[grasped] = replace(carried, center=add(new_pos, grasp_offset))

    want_closed = delta.g == 1
    if want_closed and gripper == "open":
        gripper = "closed"
        candidates = [
            o
            for o in objects.values()
            if o.graspable and dist(o.center, new_pos) <= GRASP_TOLERANCE_MM
        ]
        if candidates:
            candidates.sort(key=lambda o: (dist(o.center, new_pos), o.id))
            grasped = candidates[0].id
            grasp_offset = sub(candidates[0].center, new_pos)
            events.append(SimEvent(tick, "grasp", grasped))
    elif not want_closed and gripper == "closed":
        gripper = "open"
        if grasped is not None:
            events.append(SimEvent(tick, "release", grasped))
            grasped = None
            grasp_offset = (0.0, 0.0, 0.0)

    ee_box = Aabb.from_center(new_pos, world.ee_half_extents)
    moving_boxes = [("ee", ee_box)]
    if grasped is not None:
        moving_boxes.append((grasped, objects[grasped].aabb))

    fixed = [o for o in objects.values() if o.fixed]
    hit: set[str] = set()
    for _, box in moving_boxes:
        for obj in fixed:
            if obj.id not in hit and box.overlaps(obj.aabb):
                hit.add(obj.id)
    for obj_id in sorted(hit):
        events.append(SimEvent(tick, "collision", obj_id))

    was_in = _zone_membership(world, world.ee_pos)
    now_in = _zone_membership(world, new_pos)
    for zone_id in sorted(now_in - was_in):
        events.append(SimEvent(tick, "zone_enter", zone_id))
    for zone_id in sorted(was_in - now_in):
        events.append(SimEvent(tick, "zone_exit", zone_id))

    new_world = replace(
        world,
        ee_pos=new_pos,
        ee_vel=move,
        gripper=gripper,
        grasped=grasped,
        grasp_offset=grasp_offset,
        objects=tuple(sorted(objects.values(), key=lambda o: o.id)),
        force_z=_contact_force(ee_box, new_pos[2], fixed),
        tick=tick,
    )
    return new_world, events


def execute(
    world: WorldState,
    traj: Trajectory,
    goal: Vec3 | None = None,
    goal_tol: float = 1.0,
    goal_ref: str = "ee",
) -> tuple[WorldState, list[SimEvent], list[StepTrace]]:
    """Fold step() over a trajectory.

    When a goal is given, a goal_reached event is emitted if the final
    reference point (the EE, or the grasped object's center when
    goal_ref="grasped") lands within goal_tol millimeters of it.
    """
    events: list[SimEvent] = []
    trace: list[StepTrace] = []
    current = world
    for delta in traj.steps:
        current, step_events = step(current, delta)
        events.extend(step_events)
        trace.append(StepTrace(current.tick, current.ee_pos, tuple(step_events)))
    if goal is not None:
        ref = current.ee_pos
        if goal_ref == "grasped" and current.grasped is not None:
            obj = current.object(current.grasped)
            assert obj is not None
            ref = obj.center
        if dist(ref, goal) <= goal_tol:
            ev = SimEvent(current.tick, "goal_reached", detail=f"within {goal_tol} mm")
            events.append(ev)
            trace.append(StepTrace(current.tick, current.ee_pos, (ev,)))
    return current, events, trace


def try_place(world: WorldState, target: Vec3) -> tuple[WorldState, SimEvent]:
    """Release the grasped object at target, unless that would interpenetrate.

    On overlap with any other object's AABB the placement is refused: a
    penetration event is returned and the world is unchanged.
    """
    if world.grasped is None:
        raise NothingGrasped("no object is grasped")
    obj = world.object(world.grasped)
    assert obj is not None
    placed_box = Aabb.from_center(target, obj.half_extents)
    for other in world.objects:
        if other.id == obj.id:
            continue
        if placed_box.overlaps(other.aabb):
            return world, SimEvent(
                world.tick,
                "penetration",
                other.id,
                detail=f"{obj.id} at {target} would penetrate {other.id}",
            )
    placed = replace(obj, center=target)
    new_world = replace(
        world.with_object(placed),
        ee_pos=sub(target, world.grasp_offset),
        gripper="open",
        grasped=None,
        grasp_offset=(0.0, 0.0, 0.0),
    )
    return new_world, SimEvent(world.tick, "release", obj.id, detail="placed")
