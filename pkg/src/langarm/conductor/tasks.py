"""Task specifications, goal predicates, and the evaluation harness."""

from __future__ import annotations

import json
import math
import random
import time
from dataclasses import dataclass, field, replace
from pathlib import Path

from ..assets import load_text
from ..geometry import Vec3, dist
from ..patterns import expand
from ..planner import (
    Clarification,
    Pattern,
    PlannerResponse,
    ProviderConfig,
    Refusal,
    TranscriptStore,
    complete,
    extract_blocks,
    mock_plan,
    record,
)
from ..prompts import build
from ..robot import RobotModel, parse_urdf
from ..sentinel import Verdict, check_trajectory
from ..world import WorldState, execute, load_world, world_from_dict
from ..worlds import BUILTIN_WORLDS, builtin_world

# Reported values from the comparison study, kept as documented targets for
# context in exports. Remote-model timing and success are not reproducible
# on this desk setup and are never asserted.
REFERENCE_ROWS = (
    {"task": "grasping", "strategy": "prior_digit_runs", "time_s": 6.90, "error_m": 0.01, "success": 0.90},
    {"task": "grasping", "strategy": "improved", "time_s": 6.10, "error_m": 0.00, "success": 1.00},
    {"task": "obstacle", "strategy": "prior_digit_runs", "time_s": 5.84, "error_m": 0.05, "success": 0.30},
    {"task": "obstacle", "strategy": "improved", "time_s": 6.82, "error_m": 0.018, "success": 0.50},
)


class PlannerUnavailable(Exception):
    pass


@dataclass(frozen=True)
class GoalSpec:
    kind: str  # grasped | object_at | ee_at | in_zone | stacked
    object: str | None = None
    target: Vec3 | None = None
    tol_mm: float = 1.0
    zone: str | None = None
    top: str | None = None
    bottom: str | None = None


@dataclass(frozen=True)
class TaskSpec:
    id: str
    command: str
    world: str | dict
    goal: GoalSpec
    planner: str = "mock"  # mock | remote | replay
    strategy: str = "improved"  # improved | baseline
    level: str = "B"
    phrase_key: str | None = None
    robot: str | None = None


@dataclass(frozen=True)
class EvalResult:
    task_id: str
    generation_time_s: float
    final_error_m: float
    success: bool
    collision_count: int
    verdicts: tuple[Verdict, ...] = field(default_factory=tuple)
    detail: str = ""


def goal_from_dict(data: dict) -> GoalSpec:
    target = data.get("target")
    return GoalSpec(
        kind=data["kind"],
        object=data.get("object"),
        target=tuple(target) if target else None,
        tol_mm=float(data.get("tol_mm", 1.0)),
        zone=data.get("zone"),
        top=data.get("top"),
        bottom=data.get("bottom"),
    )


def task_from_dict(data: dict) -> TaskSpec:
    return TaskSpec(
        id=str(data["id"]),
        command=str(data["command"]),
        world=data["world"],
        goal=goal_from_dict(data["goal"]),
        planner=data.get("planner", "mock"),
        strategy=data.get("strategy", "improved"),
        level=data.get("level", "B"),
        phrase_key=data.get("phrase_key"),
        robot=data.get("robot"),
    )


def load_task(path: str | Path) -> TaskSpec:
    return task_from_dict(json.loads(Path(path).read_text()))


def resolve_world(spec_world: str | dict) -> WorldState:
    if isinstance(spec_world, dict):
        return world_from_dict(spec_world)
    if spec_world in BUILTIN_WORLDS:
        return builtin_world(spec_world)
    return load_world(spec_world)


def resolve_robot(name: str | None) -> RobotModel | None:
    if not name:
        return None
    path = Path(name)
    if path.is_file():
        return parse_urdf(path.read_text())
    return parse_urdf(load_text(f"urdf/{name}.urdf"))


def goal_target(goal: GoalSpec, world: WorldState) -> Vec3 | None:
    """The position the goal cares about, for error measurement."""
    if goal.kind == "grasped":
        obj = world.object(goal.object or "")
        return obj.center if obj else None
    if goal.kind in ("object_at", "ee_at"):
        return goal.target
    if goal.kind == "in_zone":
        zone = world.zone(goal.zone or "")
        if zone is None:
            return None
        return zone.aabb.center
    if goal.kind == "stacked":
        bottom = world.object(goal.bottom or "")
        top = world.object(goal.top or "")
        if bottom is None or top is None:
            return None
        return (
            bottom.center[0],
            bottom.center[1],
            bottom.center[2] + bottom.half_extents[2] + top.half_extents[2],
        )
    raise ValueError(f"unknown goal kind {goal.kind!r}")


def goal_holds(goal: GoalSpec, world: WorldState) -> bool:
    if goal.kind == "grasped":
        return world.grasped == goal.object
    if goal.kind == "object_at":
        obj = world.object(goal.object or "")
        return obj is not None and dist(obj.center, goal.target) <= goal.tol_mm
    if goal.kind == "ee_at":
        return dist(world.ee_pos, goal.target) <= goal.tol_mm
    if goal.kind == "in_zone":
        obj = world.object(goal.object or "")
        zone = world.zone(goal.zone or "")
        return (
            obj is not None and zone is not None and zone.aabb.contains_point(obj.center)
        )
    if goal.kind == "stacked":
        top = world.object(goal.top or "")
        bottom = world.object(goal.bottom or "")
        if top is None or bottom is None or world.grasped == top.id:
            return False
        ideal = goal_target(goal, world)
        return dist(top.center, ideal) <= goal.tol_mm
    raise ValueError(f"unknown goal kind {goal.kind!r}")


def goal_error_mm(goal: GoalSpec, world: WorldState) -> float:
    """Distance between the achieved and requested positions."""
    if goal.kind == "grasped":
        obj = world.object(goal.object or "")
        if obj is None:
            return math.inf
        return dist(obj.center, world.ee_pos) if world.grasped != obj.id else 0.0
    if goal.kind == "object_at":
        obj = world.object(goal.object or "")
        return dist(obj.center, goal.target) if obj else math.inf
    if goal.kind == "ee_at":
        return dist(world.ee_pos, goal.target)
    if goal.kind == "in_zone":
        obj = world.object(goal.object or "")
        zone = world.zone(goal.zone or "")
        if obj is None or zone is None:
            return math.inf
        gaps = []
        for i in range(3):
            lo, hi = zone.aabb.lo[i], zone.aabb.hi[i]
            c = obj.center[i]
            gaps.append(max(lo - c, 0.0, c - hi))
        return math.sqrt(sum(g * g for g in gaps))
    if goal.kind == "stacked":
        top = world.object(goal.top or "")
        ideal = goal_target(goal, world)
        if top is None or ideal is None:
            return math.inf
        return dist(top.center, ideal)
    raise ValueError(f"unknown goal kind {goal.kind!r}")


def _plan(
    spec: TaskSpec,
    command: str,
    world: WorldState,
    robot: RobotModel | None,
    provider: ProviderConfig | None,
    store: TranscriptStore | None,
) -> tuple[PlannerResponse, float]:
    bundle = build(spec.level, command, world=world, grammar=spec.strategy)
    started = time.perf_counter()
    if spec.planner == "mock":
        resp = mock_plan(command, world, robot=robot, grammar=spec.strategy)
        gen_time = time.perf_counter() - started
        if store is not None:
            record(store, bundle.checksum, bundle.rendered, resp)
    elif spec.planner == "remote":
        if provider is None:
            raise PlannerUnavailable("remote planner requires a provider config")
        resp = complete(provider, bundle, expected="pattern")
        gen_time = resp.latency_s
        if store is not None:
            record(store, bundle.checksum, bundle.rendered, resp)
    elif spec.planner == "replay":
        if store is None:
            raise PlannerUnavailable("replay planner requires a transcript store")
        resp = store.replay(bundle.checksum)
        gen_time = resp.latency_s
    else:
        raise PlannerUnavailable(f"unknown planner {spec.planner!r}")
    return resp, gen_time


def run_task(
    spec: TaskSpec,
    provider: ProviderConfig | None = None,
    store: TranscriptStore | None = None,
    world: WorldState | None = None,
    command: str | None = None,
) -> EvalResult:
    """Plan, safety-check, execute, and score one task."""
    world = world if world is not None else resolve_world(spec.world)
    command = command or spec.command
    robot = resolve_robot(spec.robot)
    resp, gen_time = _plan(spec, command, world, robot, provider, store)

    verdicts: list[Verdict] = []
    collision_count = 0
    rejected = False
    detail = ""
    current = world

    if isinstance(resp.classified, Refusal):
        rejected = True
        detail = resp.classified.reason
        verdicts.append(
            Verdict("reject", "Command refused.", resp.classified.reason, "planner")
        )
    elif isinstance(resp.classified, Clarification):
        rejected = True
        detail = resp.classified.question
        verdicts.append(
            Verdict(
                "reject",
                "Command needs clarification.",
                resp.classified.question,
                "planner",
            )
        )
    elif isinstance(resp.classified, Pattern):
        blocks = extract_blocks(resp.raw_text)
        for block in blocks:
            traj = expand(
                block,
                provenance="mock_planner" if spec.planner == "mock" else "remote_planner",
            )
            pre = check_trajectory(current, traj, robot=robot)
            verdicts.extend(pre)
            if any(v.severity == "reject" for v in pre):
                rejected = True
                detail = next(v.reason for v in pre if v.severity == "reject")
                break
            current, events, _ = execute(current, traj)
            collision_count += sum(1 for e in events if e.kind == "collision")
    else:
        rejected = True
        detail = "planner reply was unparseable"
        verdicts.append(Verdict("reject", "Unparseable reply.", detail, "planner"))

    achieved = goal_holds(spec.goal, current)
    error_mm = goal_error_mm(spec.goal, current)
    success = achieved and not rejected and collision_count == 0
    return EvalResult(
        task_id=spec.id,
        generation_time_s=gen_time,
        final_error_m=(error_mm / 1000.0) if math.isfinite(error_mm) else math.inf,
        success=success,
        collision_count=collision_count,
        verdicts=tuple(verdicts),
        detail=detail,
    )


def phrase_variations(key: str) -> list[str]:
    data = json.loads(load_text("phrase_variations.json"))
    if key not in data:
        raise KeyError(f"no phrase variations for {key!r}")
    return list(data[key])


def _columns_clear(world: WorldState) -> bool:
    """Supported-geometry test: no fixed obstacle footprint (inflated by the
    EE body) strictly contains the EE start column or a graspable target
    column, and nothing starts out interpenetrating."""
    hx, hy, _ = world.ee_half_extents
    columns = [world.ee_pos] + [o.center for o in world.objects if o.graspable]
    for obstacle in world.objects:
        if not obstacle.fixed:
            continue
        box = obstacle.aabb
        for c in columns:
            if (
                box.lo[0] - hx < c[0] < box.hi[0] + hx
                and box.lo[1] - hy < c[1] < box.hi[1] + hy
            ):
                return False
        for other in world.objects:
            if other.id != obstacle.id and obstacle.aabb.overlaps(other.aabb):
                return False
    return True


def jitter_world(world: WorldState, rng: random.Random, amount_mm: float = 10.0) -> WorldState:
    """Shift the EE, objects, and obstacles by a bounded random offset.

    Resamples until the scene stays in supported geometry (clear start
    and target columns, no initial interpenetration).
    """
    for _ in range(100):
        objects = []
        for obj in world.objects:
            if obj.fixed:
                dx = rng.uniform(-amount_mm / 2, amount_mm / 2)
                objects.append(replace(obj, center=(obj.center[0] + dx, obj.center[1], obj.center[2])))
            else:
                dx = rng.uniform(-amount_mm, amount_mm)
                dy = rng.uniform(-amount_mm, amount_mm)
                objects.append(
                    replace(obj, center=(obj.center[0] + dx, obj.center[1] + dy, obj.center[2]))
                )
        ee = (
            world.ee_pos[0] + rng.uniform(-amount_mm, amount_mm),
            world.ee_pos[1] + rng.uniform(-amount_mm, amount_mm),
            world.ee_pos[2],
        )
        candidate = replace(
            world, ee_pos=ee, objects=tuple(sorted(objects, key=lambda o: o.id))
        )
        if _columns_clear(candidate):
            return candidate
    raise ValueError("could not jitter into supported geometry")


def compare_strategies(
    specs: list[TaskSpec],
    runs: int = 10,
    seed: int = 0,
    provider: ProviderConfig | None = None,
    store: TranscriptStore | None = None,
) -> list[dict]:
    """Run every task under both grammars with rotated phrasings and jitter.

    Returns one row per (task, strategy) with mean generation time, mean
    final error, and success rate, shaped like the comparison table.
    """
    if runs < 1:
        raise ValueError("runs must be >= 1")
    rows = []
    for spec in specs:
        variations = (
            phrase_variations(spec.phrase_key) if spec.phrase_key else [spec.command]
        )
        for strategy in ("baseline", "improved"):
            runnable = replace(spec, strategy=strategy)
            times, errors, successes = [], [], []
            for k in range(runs):
                rng = random.Random((seed * 7919 + k) * 31 + hash(spec.id) % 1000)
                world = jitter_world(resolve_world(spec.world), rng)
                command = variations[k % len(variations)]
                result = run_task(
                    runnable, provider=provider, store=store, world=world, command=command
                )
                times.append(result.generation_time_s)
                errors.append(result.final_error_m)
                successes.append(result.success)
            row = {
                "task": spec.id,
                "strategy": strategy,
                "mean_time_s": sum(times) / runs,
                "mean_error_m": sum(errors) / runs,
                "success_rate": sum(successes) / runs,
                "runs": runs,
            }
            rows.append(row)
    return rows


def comparison_csv(rows: list[dict]) -> str:
    header = "task,strategy,mean_time_s,mean_error_m,success_rate,runs"
    lines = [header]
    for r in rows:
        lines.append(
            f"{r['task']},{r['strategy']},{r['mean_time_s']:.4f},"
            f"{r['mean_error_m']:.6f},{r['success_rate']:.2f},{r['runs']}"
        )
    return "\n".join(lines) + "\n"
