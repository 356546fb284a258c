"""Renderer tests: palette, determinism, stacking laws, ROI zoom oracle."""

import pytest

from langarm.geometry import Aabb
from langarm.patterns import StepDelta
from langarm.render import (
    CanvasTooSmall,
    EmptyRegion,
    Viewpoint,
    color_histogram,
    frame_stack,
    region_centroid_x,
    render_view,
    roi_zoom,
    viewport_region,
)
from langarm.render.scene import BACKGROUND, EE_COLOR, NAMED_COLORS, ZONE_COLOR
from langarm.world import WorldState, Zone, step
from langarm.worlds import alignment_world, appendix_observation_world, obstacle_world

TOP = Viewpoint("top")
FRONT = Viewpoint("front")


class TestRenderView:
    def test_two_cubes_two_color_regions(self):
        img = render_view(appendix_observation_world(), Viewpoint("top", scale=0.2))
        hist = color_histogram(img)
        assert hist.get(NAMED_COLORS["red"], 0) > 0
        assert hist.get(NAMED_COLORS["blue"], 0) > 0
        assert hist.get(EE_COLOR, 0) > 0

    def test_empty_world_uniform_background(self):
        img = render_view(WorldState(), TOP, draw_ee=False)
        hist = color_histogram(img)
        assert hist == {BACKGROUND: 320 * 240}

    def test_zone_wireframe_perimeter_count(self):
        world = WorldState(
            zones=(Zone("z", "z", Aabb((-100, -100, 0), (100, 100, 50)), ""),),
        )
        img = render_view(world, TOP, draw_ee=False)
        hist = color_histogram(img)
        # projected box: 200 mm x 200 mm at 0.25 px/mm -> 50 x 50 px outline
        expected = 2 * 50 + 2 * 50 - 4
        assert hist.get(ZONE_COLOR, 0) == expected

    def test_determinism(self):
        world = obstacle_world()
        assert render_view(world, TOP).to_ppm() == render_view(world, TOP).to_ppm()

    def test_canvas_too_small(self):
        world = WorldState(ee_pos=(10_000.0, 0.0, 0.0))
        with pytest.raises(CanvasTooSmall):
            render_view(world, TOP)

    def test_palette_injective_for_unknown_colors(self):
        from langarm.world import ObjectSpec

        world = WorldState(
            objects=(
                ObjectSpec("a", "teal", (-50.0, 0.0, 0.0), (15.0, 15.0, 15.0)),
                ObjectSpec("b", "mauve", (50.0, 0.0, 0.0), (15.0, 15.0, 15.0)),
            ),
        )
        img = render_view(world, TOP, draw_ee=False)
        hist = {c for c, n in color_histogram(img).items() if c != BACKGROUND}
        assert len(hist) == 2


class TestFrameStack:
    def _history(self, n):
        w = obstacle_world()
        out = [w]
        for _ in range(n - 1):
            w, _ = step(w, StepDelta(0, 0, 1, 0))
            out.append(w)
        return out

    def test_26_states_stride_5(self):
        stack = frame_stack(self._history(26), 5, [TOP])
        assert len(stack.rows) == 1
        assert len(stack.rows[0]) == 6  # ticks 0,5,10,15,20,25
        combined = stack.combined()
        assert combined.width == 6 * 320
        assert combined.height == 240
        assert stack.layout == "horizontal_row"

    def test_single_state(self):
        stack = frame_stack(self._history(1), 3, [TOP])
        assert len(stack.frames) == 1

    def test_two_views_grid(self):
        stack = frame_stack(self._history(11), 5, [TOP, FRONT])
        assert stack.layout == "grid"
        assert len(stack.rows) == 2
        combined = stack.combined()
        assert combined.width == 3 * 320
        assert combined.height == 2 * 240

    @pytest.mark.parametrize("n,stride", [(1, 1), (7, 2), (26, 5), (40, 7), (13, 13)])
    def test_width_law(self, n, stride):
        stack = frame_stack(self._history(n), stride, [TOP])
        expected_frames = len(range(0, n, stride))
        assert len(stack.rows[0]) == expected_frames
        assert stack.combined().width == expected_frames * 320

    def test_manifest(self, tmp_path):
        stack = frame_stack(self._history(6), 5, [TOP, FRONT])
        path = stack.write_manifest(tmp_path)
        import json

        manifest = json.loads(path.read_text())
        assert manifest["layout"] == "grid"
        assert manifest["rows"] == 2
        assert len(manifest["frames"]) == 4
        for entry in manifest["frames"]:
            assert (tmp_path / entry["file"]).exists()


class TestRoiZoom:
    def test_identity_at_zoom_1_full_viewport(self):
        world = alignment_world()
        region2d = viewport_region(FRONT)
        region = Aabb(
            (region2d[0], -1e6, region2d[1]), (region2d[2], 1e6, region2d[3])
        )
        a = roi_zoom(world, FRONT, region, 1)
        b = render_view(world, FRONT)
        assert a.to_ppm() == b.to_ppm()

    def test_empty_region(self):
        with pytest.raises(EmptyRegion):
            roi_zoom(
                alignment_world(),
                FRONT,
                Aabb((5000.0, 5000.0, 5000.0), (6000.0, 6000.0, 6000.0)),
                2,
            )

    def test_alignment_ambiguous_far_distinguishable_zoomed(self):
        world = alignment_world(offset_mm=9.0)
        far = render_view(world, FRONT)
        sep_far = abs(
            region_centroid_x(far, NAMED_COLORS["red"]) - region_centroid_x(far, EE_COLOR)
        )
        assert sep_far < 3.0

        region = Aabb((-40.0, -1e6, 0.0), (40.0, 1e6, 60.0))
        zoomed = roi_zoom(world, FRONT, region, 4)
        sep_zoom = abs(
            region_centroid_x(zoomed, NAMED_COLORS["red"])
            - region_centroid_x(zoomed, EE_COLOR)
        )
        assert sep_zoom >= 8.0
