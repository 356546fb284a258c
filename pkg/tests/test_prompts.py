"""Prompt assembly tests: golden sections, level invariants, fidelity."""

import pytest

from langarm.assets import checksum, load_text
from langarm.prompts import (
    EmptyTask,
    MissingImages,
    MissingRobot,
    MissingWorld,
    build,
    canonical_sections,
    output_directive_50,
)
from langarm.robot import parse_urdf
from langarm.world import normalized, observe, read_observation
from langarm.worlds import appendix_observation_world, obstructed_place_world

DIRECTIVE_SHA256 = "827281f51ef7a1c70d1f0cac664b16a7325f2eed10b6a0cbaf0b1501e0243e0a"
BASELINE_SHA256 = "063d2aca4061f30561f41cf9d4d97bb46d3dde996710ba11b0d6cc8f7d50a245"


@pytest.fixture
def robot():
    return parse_urdf(load_text("urdf/arm6.urdf"))


class TestLevelA:
    def test_shared_sections_byte_identical_to_asset(self):
        bundle = build("A", "Move right for 70mm")
        shared = "\n\n".join(s.text for s in bundle.sections[:4])
        assert shared == load_text("prompts/baseline_control.txt").rstrip("\n")
        assert bundle.rendered.startswith(shared)

    def test_role_and_axis_descriptions_present(self):
        bundle = build("A", "Move right for 70mm")
        assert "You are a robot control pattern manipulation expert." in bundle.rendered
        assert (
            "Moving left or right is represented as moving in the positive or "
            "negative X direction for 1mm or -1mm, respectively." in bundle.rendered
        )
        assert "positive or negative Y direction" in bundle.rendered
        assert "positive or negative Z direction" in bundle.rendered

    def test_level_a_contains_exactly_five_kinds(self):
        bundle = build("A", "Move right for 70mm")
        assert [s.kind for s in bundle.sections] == [
            "role",
            "movement_descriptions",
            "pattern_rules",
            "examples",
            "task",
        ]

    def test_baseline_asset_checksum(self):
        assert checksum("prompts/baseline_control.txt") == BASELINE_SHA256

    def test_empty_task_rejected(self):
        with pytest.raises(EmptyTask):
            build("A", "")

    def test_improved_examples_swap(self):
        bundle = build("A", "Move right for 70mm", grammar="improved")
        examples = bundle.section("examples").text
        assert "Output:     X: [0]*100" in examples
        assert examples.startswith("# Examples")


class TestLevelRequirements:
    def test_b_requires_world(self):
        with pytest.raises(MissingWorld):
            build("B", "place the cube")

    def test_c_requires_images(self):
        with pytest.raises(MissingImages):
            build("C", "task", world=appendix_observation_world())

    def test_d_requires_robot(self):
        with pytest.raises(MissingRobot):
            build("D", "task", world=appendix_observation_world(), images=["f0.ppm"])


class TestLevelB:
    def test_observation_positions_line(self):
        bundle = build(
            "B",
            "place the grasped red cube to position [-270, 190, 30]",
            world=obstructed_place_world(),
        )
        obs = bundle.section("observations").text
        assert "[[110, 490, 140], [-170, 190, 30], [-270, 190, 30]]" in obs

    def test_observation_parses_back(self):
        world = appendix_observation_world()
        bundle = build("B", "grasp the red cube", world=world)
        obs_text = bundle.section("observations").text
        line = next(
            l for l in obs_text.splitlines() if l.startswith("observation = ")
        )
        parsed = read_observation(line.removeprefix("observation = "))
        assert parsed == normalized(observe(world))


class TestMonotoneInclusion:
    def test_sections_nest_across_levels(self, robot):
        world = appendix_observation_world()
        a = build("A", "grasp the red cube")
        b = build("B", "grasp the red cube", world=world)
        c = build("C", "grasp the red cube", world=world, images=["f0.ppm"])
        d = build("D", "grasp the red cube", world=world, images=["f0.ppm"], robot=robot)
        kinds = lambda bundle: [s.kind for s in bundle.sections]
        texts = lambda bundle: {(s.kind, s.text) for s in bundle.sections}
        assert set(kinds(b)) == set(kinds(a)) | {"observations"}
        assert set(kinds(c)) == set(kinds(b)) | {"image_refs"}
        assert set(kinds(d)) == set(kinds(c)) | {"urdf_text"}
        assert texts(a) <= texts(b) <= texts(c) <= texts(d)

    def test_deterministic_render(self, robot):
        world = appendix_observation_world()
        one = build("D", "grasp", world=world, images=["x.ppm"], robot=robot)
        two = build("D", "grasp", world=world, images=["x.ppm"], robot=robot)
        assert one.rendered == two.rendered
        assert one.checksum == two.checksum


class TestOutputDirective:
    def test_appended_verbatim(self):
        bundle = build(
            "C", "grasp", world=appendix_observation_world(), images=["f0.ppm"]
        )
        with_directive = output_directive_50(bundle)
        directive = load_text("prompts/output_directive_50.txt").rstrip("\n")
        assert directive in with_directive.rendered
        assert with_directive.rendered.count("only in 50 characters") == 1

    def test_idempotent(self):
        bundle = output_directive_50(build("A", "grasp"))
        again = output_directive_50(bundle)
        assert again.rendered == bundle.rendered

    def test_directive_asset_checksum(self):
        assert checksum("prompts/output_directive_50.txt") == DIRECTIVE_SHA256

    def test_directive_renders_before_images(self):
        bundle = output_directive_50(
            build("C", "grasp", world=appendix_observation_world(), images=["f0.ppm"])
        )
        kinds = [s.kind for s in bundle.sections]
        assert kinds.index("output_directives") < kinds.index("image_refs")
