"""Deterministic rule-based planner with the same contract as the remote model.

The mock understands a small command grammar (directional moves, pick,
place at a position or into a zone, stacking, circles, approach, and
attribute sorting), routes motion around fixed obstacles by lifting
over them, and refuses exactly the commands the sentinel safety layer
rejects. Because it is exact and pure, it doubles as the oracle for
derived test values.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from ..geometry import Vec3, dist, sub
from ..patterns import (
    Concat,
    DigitRun,
    PatternBlock,
    Repeat,
    TrigTerm,
    expand,
    serialize,
)
from ..robot import RobotModel, reach_check
from ..sentinel import HazardMatrix, check_placement, sort_assignment
from ..world import WorldState, execute
from ..world.state import ObjectSpec
from .parse import extract_blocks
from .types import Clarification, Pattern, PlannerResponse, Refusal

CLEARANCE_MM = 5.0
DEFAULT_MOVE_MM = 26.0  # length of the canonical digit-run examples

_DIRECTIONS = {
    "left": ("x", -1.0),
    "right": ("x", 1.0),
    "forward": ("y", 1.0),
    "backward": ("y", -1.0),
    "back": ("y", -1.0),
    "up": ("z", 1.0),
    "down": ("z", -1.0),
}

_MOVE = re.compile(
    r"\bmove\s+(left|right|forward|backward|back|up|down)"
    r"(?:\s+for)?(?:\s+(\d+(?:\.\d+)?)\s*mm)?",
    re.IGNORECASE,
)
_PICK = re.compile(
    r"\b(?:pick\s+up|pick|grasp|grab|fetch)\b(?:\s+(?:the|a))?(?:\s+(\w+))?\s*"
    r"(?:cube|object|block)",
    re.IGNORECASE,
)
_RELEASE = re.compile(r"\b(?:release|drop|let\s+go)\b", re.IGNORECASE)
_PLACE_AT = re.compile(
    r"\[\s*(-?\d+(?:\.\d+)?)\s*,\s*(-?\d+(?:\.\d+)?)\s*,\s*(-?\d+(?:\.\d+)?)\s*\]"
)
_PLACE_ZONE = re.compile(
    r"\b(?:in|into|to)\s+(?:the\s+)?zone\s+(\w+)", re.IGNORECASE
)
_TO_ZONE = re.compile(r"\b(?:to|into|in)\s+the\s+(\w+)\s+zone\b", re.IGNORECASE)
_STACK = re.compile(
    r"\b(\w+)\s+cube\s+(?:on\s+top\s+of|onto)\s+(?:the\s+)?(\w+)\s+cube",
    re.IGNORECASE,
)
_TOWARDS = re.compile(r"\bmove\s+(?:towards?|toward|to)\s+the\s+object", re.IGNORECASE)
_COLOR_CUBE = re.compile(r"\b(\w+)\s+cube\b", re.IGNORECASE)


@dataclass(frozen=True)
class _Segment:
    axis: str
    delta: float


@dataclass
class _Leg:
    segments: list[_Segment]
    g_end: int | None = None  # gripper value taken on the leg's final step


class _NoRoute(Exception):
    pass


def _moving_profile(world: WorldState, carried: ObjectSpec | None, offset: Vec3):
    """Half extents and bottom offset of the EE plus anything it carries."""
    hx, hy, hz = world.ee_half_extents
    bottom = -hz
    if carried is not None:
        hx = max(hx, abs(offset[0]) + carried.half_extents[0])
        hy = max(hy, abs(offset[1]) + carried.half_extents[1])
        bottom = min(bottom, offset[2] - carried.half_extents[2])
    return (hx, hy), bottom


def _segment_hits_rect(p0, p1, rect) -> bool:
    """2D segment vs open rectangle (strict interior)."""
    (rx0, ry0), (rx1, ry1) = rect
    steps = 64
    for i in range(steps + 1):
        t = i / steps
        x = p0[0] + (p1[0] - p0[0]) * t
        y = p0[1] + (p1[1] - p0[1]) * t
        if rx0 < x < rx1 and ry0 < y < ry1:
            return True
    return False


def _plan_route(
    world: WorldState,
    target: Vec3,
    carried: ObjectSpec | None = None,
    offset: Vec3 = (0.0, 0.0, 0.0),
) -> list[_Segment]:
    """Axis-aligned route start -> target, lifting over fixed obstacles.

    Travel order is x, then y, then the final vertical move; when a fixed
    obstacle blocks the straight corridor the route first lifts until the
    moving body's lowest point clears the tallest blocker plus clearance.
    """
    start = world.ee_pos
    (half_x, half_y), bottom_off = _moving_profile(world, carried, offset)
    x0, y0, z0 = start
    x1, y1, z1 = target

    blockers: list[ObjectSpec] = []
    for obstacle in world.objects:
        if not obstacle.fixed:
            continue
        box = obstacle.aabb
        rect = (
            (box.lo[0] - half_x, box.lo[1] - half_y),
            (box.hi[0] + half_x, box.hi[1] + half_y),
        )
        if _segment_hits_rect((x0, y0), (x1, y0), rect) or _segment_hits_rect(
            (x1, y0), (x1, y1), rect
        ):
            # only obstacles tall enough to meet the body at travel height
            if box.hi[2] > z0 + bottom_off:
                blockers.append(obstacle)
        # a blocker directly under the descent column cannot be lifted over
        if (
            rect[0][0] < x1 < rect[1][0]
            and rect[0][1] < y1 < rect[1][1]
            and box.hi[2] > z1 + bottom_off
        ):
            raise _NoRoute(f"target column is blocked by {obstacle.id}")

    travel_z = z0
    if blockers:
        required = max(o.aabb.hi[2] for o in blockers) + CLEARANCE_MM
        travel_z = max(z0, required - bottom_off)

    segments = [
        _Segment("z", travel_z - z0),
        _Segment("x", x1 - x0),
        _Segment("y", y1 - y0),
        _Segment("z", z1 - travel_z),
    ]
    return [s for s in segments if abs(s.delta) > 1e-9]


def _axis_runs(delta: float, integer: bool) -> tuple[list[tuple[float, int]], int]:
    """Split one segment delta into unit steps plus an optional fractional step."""
    if integer:
        delta = float(round(delta))
    sign = 1.0 if delta >= 0 else -1.0
    magnitude = abs(delta)
    full = int(math.floor(magnitude + 1e-9))
    frac = magnitude - full
    runs: list[tuple[float, int]] = []
    if full:
        runs.append((sign, full))
    if frac > 1e-9:
        runs.append((sign * frac, 1))
    return runs, full + (1 if frac > 1e-9 else 0)


def _legs_to_block(legs: list[_Leg], g_start: int, integer: bool) -> PatternBlock:
    axis_runs: dict[str, list[tuple[float, int]]] = {"x": [], "y": [], "z": []}
    g_runs: list[tuple[float, int]] = []
    current_g = g_start

    for leg in legs:
        leg_len = 0
        for seg in leg.segments:
            runs, n = _axis_runs(seg.delta, integer)
            if n == 0:
                continue
            axis_runs[seg.axis].extend(runs)
            for other in ("x", "y", "z"):
                if other != seg.axis:
                    axis_runs[other].append((0.0, n))
            leg_len += n
        if leg.g_end is not None and leg.g_end != current_g and leg_len == 0:
            # pure gripper action: one zero-motion step
            for axis in ("x", "y", "z"):
                axis_runs[axis].append((0.0, 1))
            leg_len = 1
        if leg_len:
            if leg.g_end is not None and leg.g_end != current_g:
                if leg_len > 1:
                    g_runs.append((float(current_g), leg_len - 1))
                g_runs.append((float(leg.g_end), 1))
                current_g = leg.g_end
            else:
                g_runs.append((float(current_g), leg_len))

    def to_expr(runs: list[tuple[float, int]]):
        parts = [Repeat(v, n) for v, n in runs if n > 0]
        if not parts:
            return DigitRun(())
        if len(parts) == 1:
            return parts[0]
        return Concat(tuple(parts))

    block = PatternBlock(
        x=to_expr(axis_runs["x"]),
        y=to_expr(axis_runs["y"]),
        z=to_expr(axis_runs["z"]),
        g=to_expr(g_runs),
        source_grammar="baseline" if integer else "improved",
    )
    return block


def _circle_block() -> PatternBlock:
    return PatternBlock(
        x=TrigTerm("cos", n=360),
        y=TrigTerm("sin", n=360),
        z=Repeat(0.0, 360),
        g=Repeat(0.0, 360),
        source_grammar="improved",
    )


def _find_object(world: WorldState, color: str | None) -> ObjectSpec | None:
    if color:
        return world.by_color(color.lower())
    graspable = sorted(
        (o for o in world.objects if o.graspable),
        key=lambda o: (dist(o.center, world.ee_pos), o.id),
    )
    return graspable[0] if graspable else None


def _zone_drop_target(world: WorldState, zone_id: str, obj: ObjectSpec) -> Vec3 | None:
    zone = world.zone(zone_id)
    if zone is None:
        for z in world.zones:
            if z.label.lower() == zone_id.lower() or z.id.lower() == zone_id.lower():
                zone = z
                break
    if zone is None:
        return None
    cx = (zone.aabb.lo[0] + zone.aabb.hi[0]) / 2.0
    cy = (zone.aabb.lo[1] + zone.aabb.hi[1]) / 2.0
    return (cx, cy, zone.aabb.lo[2] + obj.half_extents[2])


def _pattern_response(block: PatternBlock, grammar: str) -> PlannerResponse:
    raw = serialize(block, grammar)
    return PlannerResponse(raw_text=raw, classified=Pattern(block))


def _refusal(reason: str) -> PlannerResponse:
    raw = f"{reason} Please provide a different task that avoids this problem."
    return PlannerResponse(raw_text=raw, classified=Refusal(reason=raw))


def _clarification(question: str) -> PlannerResponse:
    return PlannerResponse(raw_text=question, classified=Clarification(question=question))


def _reach_refusal(robot, robot_base, target) -> PlannerResponse | None:
    result = reach_check(robot, robot_base, target)
    if result.status == "out_of_reach":
        return _refusal(
            f"The target {list(target)} lies {result.deficit_mm:.0f} mm beyond the "
            "arm's reach envelope, so this action is not possible."
        )
    return None


def _fetch_and_place(
    world: WorldState,
    obj: ObjectSpec,
    target: Vec3,
    grammar: str,
) -> PatternBlock:
    """One block: route to the object, grasp, carry to target, release."""
    legs: list[_Leg] = []
    g_start = 0
    if world.grasped == obj.id:
        g_start = 1
        carried = obj
        offset = world.grasp_offset
    else:
        legs.append(_Leg(_plan_route(world, obj.center), g_end=1))
        carried = obj
        offset = (0.0, 0.0, 0.0)
        world = _advance(world, legs, g_start, grammar)
    carry_world = world
    ee_target = sub(target, offset)
    legs.append(
        _Leg(_plan_route(carry_world, ee_target, carried=carried, offset=offset), g_end=0)
    )
    return _legs_to_block(legs, g_start, integer=(grammar == "baseline"))


def _advance(world: WorldState, legs: list[_Leg], g_start: int, grammar: str) -> WorldState:
    """Simulate the legs so the next leg plans from the right state."""
    block = _legs_to_block(legs, g_start, integer=(grammar == "baseline"))
    final, _, _ = execute(world, expand(block, provenance="mock_planner"))
    return final


def mock_plan(
    command_text: str,
    world: WorldState,
    robot: RobotModel | None = None,
    grammar: str = "improved",
    matrix: HazardMatrix | None = None,
    robot_base: Vec3 = (0.0, 0.0, 0.0),
) -> PlannerResponse:
    """Deterministically turn a supported command into a pattern or a refusal."""
    text = command_text.strip()
    lowered = text.lower()
    integer = grammar == "baseline"

    if not text:
        return _clarification("The command is empty. What should the robot do?")

    if "circle" in lowered:
        return _pattern_response(_circle_block(), "improved")

    if "cubes" in lowered and "zone" in lowered:
        return _sorting_plan(world, grammar, matrix)

    stack = _STACK.search(text)
    if stack:
        top = world.by_color(stack.group(1).lower())
        bottom = world.by_color(stack.group(2).lower())
        if top is None or bottom is None:
            return _clarification(
                "Which cubes should be stacked? I could not find both colors. "
                "Could you restate the command?"
            )
        target = (
            bottom.center[0],
            bottom.center[1],
            bottom.center[2] + bottom.half_extents[2] + top.half_extents[2],
        )
        verdict = check_placement(world, top.id, target, matrix=matrix)
        if verdict.severity == "reject":
            return _refusal(verdict.reason)
        if robot is not None:
            refused = _reach_refusal(robot, robot_base, target)
            if refused:
                return refused
        try:
            block = _fetch_and_place(world, top, target, grammar)
        except _NoRoute as e:
            return _clarification(f"I cannot find a safe route: {e}. Can you adjust the scene?")
        return _pattern_response(block, grammar)

    place_at = _PLACE_AT.search(text)
    if place_at and ("place" in lowered or "put" in lowered or "position" in lowered):
        target = (
            float(place_at.group(1)),
            float(place_at.group(2)),
            float(place_at.group(3)),
        )
        color = _COLOR_CUBE.search(text)
        obj = None
        if color and world.by_color(color.group(1).lower()):
            obj = world.by_color(color.group(1).lower())
        elif world.grasped:
            obj = world.object(world.grasped)
        if obj is None:
            return _clarification(
                "Which object should be placed there? Please name a cube."
            )
        verdict = check_placement(world, obj.id, target, matrix=matrix)
        if verdict.severity == "reject":
            return _refusal(verdict.reason)
        if robot is not None:
            refused = _reach_refusal(robot, robot_base, target)
            if refused:
                return refused
        try:
            block = _fetch_and_place(world, obj, target, grammar)
        except _NoRoute as e:
            return _clarification(f"I cannot find a safe route: {e}. Can you adjust the scene?")
        return _pattern_response(block, grammar)

    zone_match = _PLACE_ZONE.search(text) or _TO_ZONE.search(text)
    if zone_match:
        color = _COLOR_CUBE.search(text)
        obj = _find_object(world, color.group(1) if color else None)
        if obj is None:
            return _clarification("Which cube goes to the zone? Please name one.")
        target = _zone_drop_target(world, zone_match.group(1), obj)
        if target is None:
            return _clarification(
                f"I do not know a zone called {zone_match.group(1)!r}. "
                "Which zone did you mean?"
            )
        verdict = check_placement(world, obj.id, target, matrix=matrix)
        if verdict.severity == "reject":
            return _refusal(verdict.reason)
        if robot is not None:
            refused = _reach_refusal(robot, robot_base, target)
            if refused:
                return refused
        try:
            block = _fetch_and_place(world, obj, target, grammar)
        except _NoRoute as e:
            return _clarification(f"I cannot find a safe route: {e}. Can you adjust the scene?")
        return _pattern_response(block, grammar)

    if _TOWARDS.search(text):
        obj = _find_object(world, None)
        if obj is None:
            return _clarification("There is no object to approach. What should I do?")
        if robot is not None:
            refused = _reach_refusal(robot, robot_base, obj.center)
            if refused:
                return refused
        try:
            legs = [_Leg(_plan_route(world, obj.center), g_end=None)]
        except _NoRoute as e:
            return _clarification(f"I cannot find a safe route: {e}. Can you adjust the scene?")
        return _pattern_response(_legs_to_block(legs, 0, integer), grammar)

    pick = _PICK.search(text)
    move = _MOVE.search(text)

    if pick and not move:
        obj = _find_object(world, pick.group(1))
        if obj is None:
            return _clarification(
                "I could not find that object in the scene. Which cube should I grasp?"
            )
        if robot is not None:
            refused = _reach_refusal(robot, robot_base, obj.center)
            if refused:
                return refused
        try:
            legs = [_Leg(_plan_route(world, obj.center), g_end=1)]
        except _NoRoute as e:
            return _clarification(f"I cannot find a safe route: {e}. Can you adjust the scene?")
        return _pattern_response(_legs_to_block(legs, 0, integer), grammar)

    if move:
        axis, sign = _DIRECTIONS[move.group(1).lower()]
        distance = float(move.group(2)) if move.group(2) else DEFAULT_MOVE_MM
        g_end = None
        g_start = 1 if world.grasped else 0
        if pick:
            g_end = 1
        elif _RELEASE.search(text):
            g_start = 1
            g_end = 0
        legs = [_Leg([_Segment(axis, sign * distance)], g_end=g_end)]
        return _pattern_response(_legs_to_block(legs, g_start, integer), grammar)

    return _clarification(
        "I could not map that command to a control pattern. "
        "Could you rephrase it using the supported movement grammar?"
    )


def _sorting_plan(
    world: WorldState, grammar: str, matrix: HazardMatrix | None
) -> PlannerResponse:
    movable = [o for o in world.objects if o.graspable]
    assignment, verdicts = sort_assignment(movable, list(world.zones), matrix=matrix)
    if not assignment:
        reasons = "; ".join(v.reason for v in verdicts if v.severity == "reject")
        return _refusal(reasons or "No safe assignment exists; this action is not possible.")

    prose: list[str] = []
    rejected = [v for v in verdicts if v.severity == "reject"]
    if rejected:
        prose.append(
            "Given the physical properties of the cubes and the zones, some "
            "pairings would be hazardous: " + " ".join(v.summary for v in rejected)
        )
    prose.append(
        "I will provide control patterns that sort each cube into a safe zone."
    )

    chunks: list[str] = [" ".join(prose)]
    scratch = world
    for obj_id in sorted(assignment):
        obj = scratch.object(obj_id)
        assert obj is not None
        target = _zone_drop_target(scratch, assignment[obj_id], obj)
        assert target is not None
        try:
            block = _fetch_and_place(scratch, obj, target, grammar)
        except _NoRoute as e:
            return _clarification(f"I cannot find a safe route: {e}. Can you adjust the scene?")
        chunks.append(
            f"Control Pattern for {obj_id} cube to {assignment[obj_id]} zone:\n"
            + serialize(block, grammar)
        )
        final, _, _ = execute(scratch, expand(block, provenance="mock_planner"))
        scratch = final

    raw = "\n\n".join(chunks)
    blocks = extract_blocks(raw)
    return PlannerResponse(raw_text=raw, classified=Pattern(blocks[0]))
