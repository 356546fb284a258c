"""Prompt assembly for the four incremental input levels A-D.

Level A carries the canonical control-prompt sections (role, movement
descriptions, pattern rules, few-shot examples) plus the task. Level B
adds the serialized observation list, level C adds image references,
and level D adds the robot structure summary. The canonical sections
come verbatim from versioned asset files so renders are byte-stable.
"""

from .forge import (
    EmptyTask,
    MissingImages,
    MissingRobot,
    MissingWorld,
    PromptBundle,
    Section,
    build,
    canonical_sections,
    output_directive_50,
)

__all__ = [
    "EmptyTask",
    "MissingImages",
    "MissingRobot",
    "MissingWorld",
    "PromptBundle",
    "Section",
    "build",
    "canonical_sections",
    "output_directive_50",
]
