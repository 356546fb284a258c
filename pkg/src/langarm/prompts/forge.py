"""Bundle construction and rendering."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import lru_cache

from ..assets import load_text
from ..robot import RobotModel, summary_text
from ..world import WorldState, observe, render_observation, render_positions

LEVELS = ("A", "B", "C", "D")

# Render order of section kinds. Bundles keep sections sorted by this key.
KIND_ORDER = (
    "role",
    "movement_descriptions",
    "pattern_rules",
    "examples",
    "task",
    "observations",
    "constraints",
    "output_directives",
    "urdf_text",
    "image_refs",
)


class EmptyTask(ValueError):
    pass


class MissingWorld(ValueError):
    pass


class MissingImages(ValueError):
    pass


class MissingRobot(ValueError):
    pass


@dataclass(frozen=True)
class Section:
    kind: str
    text: str


@dataclass(frozen=True)
class PromptBundle:
    level: str
    sections: tuple[Section, ...]
    rendered: str
    image_refs: tuple[str, ...] = ()

    @property
    def checksum(self) -> str:
        h = hashlib.sha256(self.rendered.encode("utf-8"))
        for ref in self.image_refs:
            h.update(b"\x00")
            h.update(str(ref).encode("utf-8"))
        return h.hexdigest()

    def section(self, kind: str) -> Section | None:
        for s in self.sections:
            if s.kind == kind:
                return s
        return None


def _render(sections: tuple[Section, ...]) -> str:
    return "\n\n".join(s.text for s in sections)


def _assemble(level: str, sections: list[Section], image_refs: tuple[str, ...]) -> PromptBundle:
    ordered = tuple(sorted(sections, key=lambda s: KIND_ORDER.index(s.kind)))
    return PromptBundle(
        level=level, sections=ordered, rendered=_render(ordered), image_refs=image_refs
    )


@lru_cache(maxsize=None)
def canonical_sections() -> dict[str, str]:
    """The shared control-prompt sections, split from the bundled asset.

    Splitting preserves bytes: joining the values back with blank lines
    reproduces the asset file exactly.
    """
    text = load_text("prompts/baseline_control.txt").rstrip("\n")
    parts = text.split("\n\n# ")
    out: dict[str, str] = {}
    keys = ("role", "movement_descriptions", "pattern_rules", "examples")
    for i, part in enumerate(parts):
        if i > 0:
            part = "# " + part
        out[keys[i]] = part
    return out


def _examples_section(grammar: str) -> str:
    if grammar == "improved":
        return load_text("prompts/improved_examples.txt").rstrip("\n")
    return canonical_sections()["examples"]


def build(
    level: str,
    task_text: str,
    world: WorldState | None = None,
    images: list[str] | tuple[str, ...] | None = None,
    robot: RobotModel | None = None,
    constraints: list[str] | None = None,
    grammar: str = "baseline",
) -> PromptBundle:
    """Assemble the prompt for one task at the requested input level."""
    level = level.upper()
    if level not in LEVELS:
        raise ValueError(f"unknown prompt level {level!r}")
    if not task_text or not task_text.strip():
        raise EmptyTask("task text must be non-empty")
    if level in ("B", "C", "D") and world is None:
        raise MissingWorld(f"level {level} requires a world state")
    if level in ("C", "D") and not images:
        raise MissingImages(f"level {level} requires image references")
    if level == "D" and robot is None:
        raise MissingRobot("level D requires a robot model")

    shared = canonical_sections()
    sections = [
        Section("role", shared["role"]),
        Section("movement_descriptions", shared["movement_descriptions"]),
        Section("pattern_rules", shared["pattern_rules"]),
        Section("examples", _examples_section(grammar)),
        Section("task", f"# Task\n{task_text}"),
    ]
    if level in ("B", "C", "D"):
        assert world is not None
        obs_text = (
            "# Observations\n"
            f"observation = {render_observation(observe(world))}\n"
            f"positions = {render_positions(world)}"
        )
        sections.append(Section("observations", obs_text))
    if constraints:
        sections.append(Section("constraints", "# Constraints\n" + "\n".join(constraints)))
    image_refs: tuple[str, ...] = ()
    if level in ("C", "D"):
        assert images
        image_refs = tuple(str(i) for i in images)
        listing = "\n".join(f"{i + 1}. {ref}" for i, ref in enumerate(image_refs))
        sections.append(
            Section("image_refs", "# Images\nframe stack, left to right:\n" + listing)
        )
    if level == "D":
        assert robot is not None
        sections.append(Section("urdf_text", "# Robot Structure\n" + summary_text(robot)))
    return _assemble(level, sections, image_refs)


def output_directive_50(bundle: PromptBundle) -> PromptBundle:
    """Append the canonical 50-character output directive. Idempotent."""
    if bundle.section("output_directives") is not None:
        return bundle
    directive = load_text("prompts/output_directive_50.txt").rstrip("\n")
    sections = list(bundle.sections) + [Section("output_directives", directive)]
    return _assemble(bundle.level, sections, bundle.image_refs)
