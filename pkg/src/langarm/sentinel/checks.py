"""Placement, hazard, trajectory, and sorting checks.

Every check returns Verdict values instead of raising: a reject is a
judgment, not a failure. The hazard matrix is a versioned asset mapping
(object attribute, context attribute) pairs to ok/warn/reject with a
rationale template; unknown pairs default to ok.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from ..assets import load_text
from ..geometry import Aabb, Vec3
from ..patterns import Trajectory
from ..robot import RobotModel, reach_check
from ..world import WorldState, Zone, execute
from ..world.state import ObjectSpec


class UnknownObject(Exception):
    def __init__(self, object_id: str):
        self.object_id = object_id
        super().__init__(f"no object with id {object_id!r}")


@dataclass(frozen=True)
class HazardRule:
    subject: str
    context: str
    verdict: str  # ok | warn | reject
    rationale: str


@dataclass(frozen=True)
class Verdict:
    severity: str  # ok | warn | reject
    summary: str
    reason: str
    source: str
    tick: int | None = None

    def __post_init__(self) -> None:
        if self.severity == "reject" and not self.reason:
            raise ValueError("reject verdicts must carry a reason")


class HazardMatrix:
    def __init__(self, rules: list[HazardRule]):
        self._rules: dict[tuple[str, str], HazardRule] = {}
        for rule in rules:
            key = (rule.subject, rule.context)
            if key in self._rules:
                raise ValueError(f"duplicate hazard rule for {key}")
            self._rules[key] = rule

    def lookup(self, subject: str, context: str) -> HazardRule:
        rule = self._rules.get((subject, context))
        if rule is not None:
            return rule
        return HazardRule(subject, context, "ok", "no known hazard for this pairing")

    @property
    def rules(self) -> tuple[HazardRule, ...]:
        return tuple(self._rules.values())


def load_matrix(path: str | Path | None = None) -> HazardMatrix:
    text = (
        Path(path).read_text(encoding="utf-8")
        if path is not None
        else load_text("hazard_matrix.tsv")
    )
    rules = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 4:
            raise ValueError(f"hazard matrix row needs 4 tab-separated fields: {line!r}")
        rules.append(HazardRule(fields[0], fields[1], fields[2], fields[3]))
    return HazardMatrix(rules)


@lru_cache(maxsize=1)
def default_matrix() -> HazardMatrix:
    return load_matrix()


def _containing_zones(world: WorldState, point: Vec3) -> list[Zone]:
    return [z for z in world.zones if z.aabb.contains_point(point)]


def check_placement(
    world: WorldState,
    object_id: str,
    target: Vec3,
    matrix: HazardMatrix | None = None,
) -> Verdict:
    """Would releasing object_id at target be safe?

    Rejects on interpenetration with any other object and on a hazard
    rule for the target's containing zone; ok otherwise.
    """
    matrix = matrix or default_matrix()
    obj = world.object(object_id)
    if obj is None:
        raise UnknownObject(object_id)
    placed = Aabb.from_center(target, obj.half_extents)
    for other in world.objects:
        if other.id == object_id:
            continue
        if placed.overlaps(other.aabb):
            return Verdict(
                severity="reject",
                summary=f"Placement would penetrate the {other.id} cube.",
                reason=(
                    f"The {object_id} cube placed at {_fmt_vec(target)} would penetrate "
                    f"the {other.id} cube; cubes are solid and impenetrable, so this "
                    "action is not possible."
                ),
                source="placement_penetration",
            )
    for zone in _containing_zones(world, target):
        rule = matrix.lookup(obj.attribute, zone.attribute)
        if rule.verdict in ("warn", "reject"):
            rationale = rule.rationale.format(
                subject=f"the {object_id} cube", context=zone.attribute
            )
            return Verdict(
                severity=rule.verdict,
                summary=f"Hazard: {obj.attribute} into {zone.attribute} zone.",
                reason=f"{rationale}. This action is not recommended.",
                source="placement_hazard",
            )
    return Verdict(
        severity="ok",
        summary=f"Placement of {object_id} is safe.",
        reason=f"target {_fmt_vec(target)} is free and attribute-neutral",
        source="placement",
    )


def check_trajectory(
    world: WorldState,
    traj: Trajectory,
    robot: RobotModel | None = None,
    robot_base: Vec3 = (0.0, 0.0, 0.0),
    matrix: HazardMatrix | None = None,
) -> list[Verdict]:
    """Dry-run a trajectory on a scratch copy and judge what happens.

    Collisions reject; leaving a safe-attribute zone warns; with a robot
    model registered, entering the near-singularity shell warns and
    leaving the reach envelope rejects. Verdict ticks reference steps.
    """
    verdicts: list[Verdict] = []
    _, events, trace = execute(world, traj)
    safe_ids = {z.id for z in world.zones if z.attribute == "safe" or z.label == "safe"}
    subject = world.grasped or "end effector"
    for event in events:
        if event.kind == "collision":
            verdicts.append(
                Verdict(
                    severity="reject",
                    summary="Collision imminent.",
                    reason=f"End effector hits {event.target} at step {event.tick}.",
                    source="trajectory_collision",
                    tick=event.tick,
                )
            )
        elif event.kind == "zone_exit" and event.target in safe_ids:
            verdicts.append(
                Verdict(
                    severity="warn",
                    summary="Leaving the safe zone.",
                    reason=f"{subject} misaligned; wall proximity at step {event.tick}.",
                    source="safe_zone_exit",
                    tick=event.tick,
                )
            )
    if robot is not None:
        near_seen = out_seen = False
        for t in trace:
            result = reach_check(robot, robot_base, t.ee_pos)
            if result.status == "out_of_reach" and not out_seen:
                out_seen = True
                verdicts.append(
                    Verdict(
                        severity="reject",
                        summary="Target beyond reach envelope.",
                        reason=(
                            f"Step {t.tick} is {result.deficit_mm:.0f} mm outside the "
                            "reachable sphere; this action is not possible."
                        ),
                        source="out_of_reach",
                        tick=t.tick,
                    )
                )
            elif result.status == "near_singularity" and not near_seen:
                near_seen = True
                verdicts.append(
                    Verdict(
                        severity="warn",
                        summary="Near-singular arm extension.",
                        reason=(
                            f"Step {t.tick} comes within {result.margin_mm:.0f} mm of "
                            "full extension."
                        ),
                        source="near_singularity",
                        tick=t.tick,
                    )
                )
            if near_seen and out_seen:
                break
    verdicts.sort(key=lambda v: (v.tick if v.tick is not None else -1))
    return verdicts


def obstruction_check(world: WorldState, target: Vec3) -> Verdict:
    """Does any fixed obstacle block the straight EE-to-target segment?

    The segment is tested against each obstacle box inflated by the EE
    half-extents, which is exactly the swept corridor of the EE body.
    """
    for obj in world.objects:
        if not obj.fixed:
            continue
        corridor = obj.aabb.inflate(world.ee_half_extents)
        if corridor.intersects_segment(world.ee_pos, target):
            return Verdict(
                severity="warn",
                summary=f"The {obj.id} cube obstructs the path.",
                reason=(
                    f"{obj.id} lies on the straight path from {_fmt_vec(world.ee_pos)} "
                    f"to {_fmt_vec(target)}; plan an avoidance maneuver."
                ),
                source="obstruction",
            )
    return Verdict(
        severity="ok",
        summary="Path is clear.",
        reason="no obstacle intersects the straight approach",
        source="obstruction",
    )


def sort_assignment(
    objects: list[ObjectSpec],
    zones: list[Zone],
    matrix: HazardMatrix | None = None,
) -> tuple[dict[str, str], list[Verdict]]:
    """Assign each object an admissible zone, zones being exclusive.

    Inadmissible pairs get reject verdicts with the matrix rationale.
    Unique admissible choices are propagated first (an object forced
    into a zone removes that zone from the others); remaining ties fall
    back to lexicographic order for determinism. Objects left without
    any admissible zone are reported as rejects with no assignment.
    """
    matrix = matrix or default_matrix()
    verdicts: list[Verdict] = []
    admissible: dict[str, set[str]] = {}
    for obj in sorted(objects, key=lambda o: o.id):
        options = set()
        for zone in zones:
            rule = matrix.lookup(obj.attribute, zone.attribute)
            if rule.verdict == "reject":
                rationale = rule.rationale.format(
                    subject=f"the {obj.id} cube", context=zone.attribute
                )
                verdicts.append(
                    Verdict(
                        severity="reject",
                        summary=f"{obj.id} must not go to the {zone.id} zone.",
                        reason=f"{rationale}. This pairing is not recommended.",
                        source="sorting_hazard",
                    )
                )
            else:
                options.add(zone.id)
        admissible[obj.id] = options

    assignment: dict[str, str] = {}
    unassigned = sorted(admissible)
    while unassigned:
        forced = [o for o in unassigned if len(admissible[o]) == 1]
        if forced:
            obj_id = forced[0]
            zone_id = next(iter(admissible[obj_id]))
        else:
            with_options = [o for o in unassigned if admissible[o]]
            if not with_options:
                break
            obj_id = with_options[0]
            zone_id = min(admissible[obj_id])
        assignment[obj_id] = zone_id
        unassigned.remove(obj_id)
        for other in unassigned:
            admissible[other].discard(zone_id)

    for obj_id in sorted(admissible):
        if obj_id in assignment:
            verdicts.append(
                Verdict(
                    severity="ok",
                    summary=f"{obj_id} sorted to the {assignment[obj_id]} zone.",
                    reason="safe pairing of object and zone attributes",
                    source="sorting",
                )
            )
        else:
            verdicts.append(
                Verdict(
                    severity="reject",
                    summary=f"No admissible zone for {obj_id}.",
                    reason=(
                        f"every candidate zone is hazardous for {obj_id}; "
                        "this action is not possible."
                    ),
                    source="sorting",
                )
            )
    return assignment, verdicts


def truncate_50(text: str, limit: int = 50) -> str:
    """Cut at a word boundary so the result never exceeds the limit."""
    if len(text) <= limit:
        return text
    cut = text[: limit + 1]
    space = cut.rfind(" ")
    if space <= 0:
        return text[:limit]
    return cut[:space].rstrip()


@lru_cache(maxsize=1)
def _templates() -> dict[str, str]:
    out = {}
    for line in load_text("verdict_templates.tsv").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        severity, template = line.split("\t", 1)
        out[severity] = template
    return out


def verbalize(verdict: Verdict, mode: str = "full") -> str:
    """Render a verdict for the operator.

    full mode expands the severity template; fifty_char mode emits the
    Appendix-style two-line form with each line capped at 50 characters.
    """
    if mode == "fifty_char":
        return f"{truncate_50(verdict.summary)}\n{truncate_50(verdict.reason)}"
    if mode != "full":
        raise ValueError(f"unknown verbalization mode {mode!r}")
    template = _templates().get(verdict.severity, "{summary} {reason}")
    return template.format(summary=verdict.summary, reason=verdict.reason)


def _fmt_vec(v: Vec3) -> str:
    return "[{:g}, {:g}, {:g}]".format(*v)


__all__ = [
    "HazardMatrix",
    "HazardRule",
    "UnknownObject",
    "Verdict",
    "check_placement",
    "check_trajectory",
    "default_matrix",
    "load_matrix",
    "obstruction_check",
    "sort_assignment",
    "truncate_50",
    "verbalize",
]
