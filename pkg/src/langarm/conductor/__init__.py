"""Orchestration: task evaluation, live sessions, HTTP service, CLI."""

from .session import Session, SessionEvent, SessionManager, UnknownSession
from .tasks import (
    EvalResult,
    GoalSpec,
    PlannerUnavailable,
    REFERENCE_ROWS,
    TaskSpec,
    compare_strategies,
    comparison_csv,
    goal_error_mm,
    goal_holds,
    goal_target,
    jitter_world,
    load_task,
    phrase_variations,
    resolve_robot,
    resolve_world,
    run_task,
    task_from_dict,
)

__all__ = [
    "EvalResult",
    "GoalSpec",
    "PlannerUnavailable",
    "REFERENCE_ROWS",
    "Session",
    "SessionEvent",
    "SessionManager",
    "TaskSpec",
    "UnknownSession",
    "compare_strategies",
    "comparison_csv",
    "goal_error_mm",
    "goal_holds",
    "goal_target",
    "jitter_world",
    "load_task",
    "phrase_variations",
    "resolve_robot",
    "resolve_world",
    "run_task",
    "task_from_dict",
]
