"""Orthographic projection of world snapshots onto rasters.

Fixed palette: cubes by color name, black for fixed obstacles, gray
wireframes for zones, orange for the end effector. Flat shading, no
lighting; identical inputs produce byte-identical images.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from ..geometry import Aabb, Vec3
from ..world import WorldState
from .raster import Color, Raster

BACKGROUND: Color = (255, 255, 255)
EE_COLOR: Color = (255, 140, 0)
ZONE_COLOR: Color = (128, 128, 128)
OBSTACLE_COLOR: Color = (0, 0, 0)

NAMED_COLORS: dict[str, Color] = {
    "red": (255, 0, 0),
    "blue": (0, 0, 255),
    "black": (0, 0, 0),
    "green": (0, 160, 0),
    "yellow": (230, 200, 0),
    "gray": (128, 128, 128),
}

# Assigned to unrecognized color names in sorted-name order, so distinct
# names always map to distinct pixel colors within one render.
FALLBACK_COLORS: tuple[Color, ...] = (
    (170, 0, 170),
    (0, 170, 170),
    (120, 80, 0),
    (80, 0, 120),
    (0, 90, 60),
    (150, 150, 0),
)


class CanvasTooSmall(Exception):
    pass


class EmptyRegion(Exception):
    pass


@dataclass(frozen=True)
class Viewpoint:
    kind: str = "top"  # top | front | side | custom
    scale: float = 0.25  # pixels per millimeter
    canvas: tuple[int, int] = (320, 240)
    right: Vec3 = (1.0, 0.0, 0.0)  # custom basis only
    up: Vec3 = (0.0, 1.0, 0.0)

    def __post_init__(self) -> None:
        if self.scale <= 0:
            raise ValueError("scale must be positive")
        if self.canvas[0] <= 0 or self.canvas[1] <= 0:
            raise ValueError("canvas dimensions must be positive")

    def project(self, p: Vec3) -> tuple[float, float]:
        if self.kind == "top":
            return (p[0], p[1])
        if self.kind == "front":
            return (p[0], p[2])
        if self.kind == "side":
            return (p[1], p[2])
        if self.kind == "custom":
            r, u = self.right, self.up
            return (
                p[0] * r[0] + p[1] * r[1] + p[2] * r[2],
                p[0] * u[0] + p[1] * u[1] + p[2] * u[2],
            )
        raise ValueError(f"unknown viewpoint kind {self.kind!r}")


def _px(value: float) -> int:
    return int(math.floor(value + 0.5))


def _color_map(world: WorldState) -> dict[str, Color]:
    mapping = dict(NAMED_COLORS)
    unknown = sorted({o.color for o in world.objects} - set(mapping))
    for i, name in enumerate(unknown):
        mapping[name] = FALLBACK_COLORS[i % len(FALLBACK_COLORS)]
    return mapping


def _world_bbox(world: WorldState) -> Aabb:
    box = world.ee_aabb
    for o in world.objects:
        box = box.union(o.aabb)
    for z in world.zones:
        box = box.union(z.aabb)
    return box


def _project_box(view: Viewpoint, box: Aabb) -> tuple[float, float, float, float]:
    u0, v0 = view.project(box.lo)
    u1, v1 = view.project(box.hi)
    return (min(u0, u1), min(v0, v1), max(u0, u1), max(v0, v1))


def _render_region(
    world: WorldState,
    view: Viewpoint,
    region: tuple[float, float, float, float],
    scale: float,
    draw_ee: bool,
) -> Raster:
    umin, vmin, umax, vmax = region
    width = max(1, _px((umax - umin) * scale))
    height = max(1, _px((vmax - vmin) * scale))
    img = Raster(width, height, BACKGROUND)

    def rect_px(bounds: tuple[float, float, float, float]) -> tuple[int, int, int, int]:
        bu0, bv0, bu1, bv1 = bounds
        x0 = _px((bu0 - umin) * scale)
        x1 = _px((bu1 - umin) * scale)
        y0 = height - _px((bv1 - vmin) * scale)
        y1 = height - _px((bv0 - vmin) * scale)
        if x1 <= x0:
            x1 = x0 + 1
        if y1 <= y0:
            y1 = y0 + 1
        return x0, y0, x1, y1

    for zone in world.zones:
        img.outline_rect(*rect_px(_project_box(view, zone.aabb)), ZONE_COLOR)
    colors = _color_map(world)
    fixed = [o for o in world.objects if o.fixed]
    movable = [o for o in world.objects if not o.fixed]
    for obj in sorted(fixed, key=lambda o: o.id):
        img.fill_rect(*rect_px(_project_box(view, obj.aabb)), OBSTACLE_COLOR)
    for obj in sorted(movable, key=lambda o: o.id):
        img.fill_rect(*rect_px(_project_box(view, obj.aabb)), colors[obj.color])
    if draw_ee:
        img.fill_rect(*rect_px(_project_box(view, world.ee_aabb)), EE_COLOR)
    return img


def viewport_region(view: Viewpoint) -> tuple[float, float, float, float]:
    """The world rectangle (view coordinates, mm) a full-canvas render covers."""
    half_u = view.canvas[0] / view.scale / 2.0
    half_v = view.canvas[1] / view.scale / 2.0
    return (-half_u, -half_v, half_u, half_v)


def render_view(world: WorldState, view: Viewpoint, draw_ee: bool = True) -> Raster:
    """Project the whole scene onto the viewpoint's canvas.

    Raises CanvasTooSmall when the scene's bounds fall outside what the
    canvas covers at the configured scale.
    """
    region = viewport_region(view)
    if world.objects or world.zones or draw_ee:
        bu0, bv0, bu1, bv1 = _project_box(view, _world_bbox(world))
        if bu0 < region[0] or bv0 < region[1] or bu1 > region[2] or bv1 > region[3]:
            raise CanvasTooSmall(
                f"scene spans ({bu0:.0f},{bv0:.0f})..({bu1:.0f},{bv1:.0f}) mm but the "
                f"canvas covers ({region[0]:.0f},{region[1]:.0f})..({region[2]:.0f},{region[3]:.0f})"
            )
    return _render_region(world, view, region, view.scale, draw_ee)


def roi_zoom(
    world: WorldState,
    view: Viewpoint,
    region: Aabb,
    zoom: float,
    draw_ee: bool = True,
) -> Raster:
    """Render only the given world-space region, magnified by zoom.

    roi_zoom over the full viewport at zoom 1 is byte-identical to
    render_view: both run through the same region renderer.
    """
    if zoom < 1:
        raise ValueError("zoom must be >= 1")
    if not region.overlaps(_world_bbox(world)):
        raise EmptyRegion(f"region {region} does not intersect the scene bounds")
    return _render_region(
        world, view, _project_box(view, region), view.scale * zoom, draw_ee
    )


@dataclass(frozen=True)
class FrameStack:
    """Time-sampled renders, one row per viewpoint."""

    rows: tuple[tuple[Raster, ...], ...]
    layout: str  # "horizontal_row" | "grid"
    ticks: tuple[int, ...] = field(default_factory=tuple)

    @property
    def frames(self) -> tuple[Raster, ...]:
        return tuple(f for row in self.rows for f in row)

    def combined(self) -> Raster:
        frame_w = self.rows[0][0].width
        frame_h = self.rows[0][0].height
        count = len(self.rows[0])
        out = Raster(frame_w * count, frame_h * len(self.rows), BACKGROUND)
        for r, row in enumerate(self.rows):
            for c, frame in enumerate(row):
                ox, oy = c * frame_w, r * frame_h
                for y in range(frame.height):
                    src = (y * frame.width) * 3
                    dst = ((oy + y) * out.width + ox) * 3
                    out.pixels[dst : dst + frame.width * 3] = frame.pixels[
                        src : src + frame.width * 3
                    ]
        return out

    def write_manifest(self, directory: str | Path, basename: str = "frame") -> Path:
        """Save every frame as PPM plus a JSON manifest describing the layout."""
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        entries = []
        for r, row in enumerate(self.rows):
            for c, frame in enumerate(row):
                name = f"{basename}_v{r}_t{c}.ppm"
                frame.save_ppm(directory / name)
                entries.append(
                    {"file": name, "row": r, "column": c, "tick": self.ticks[c]}
                )
        manifest = {
            "layout": self.layout,
            "rows": len(self.rows),
            "columns": len(self.rows[0]) if self.rows else 0,
            "frames": entries,
        }
        path = directory / f"{basename}_manifest.json"
        path.write_text(json.dumps(manifest, indent=2) + "\n")
        return path


def frame_stack(
    history: list[WorldState],
    stride: int,
    views: list[Viewpoint],
    draw_ee: bool = True,
) -> FrameStack:
    """Sample the history at ticks 0, stride, 2*stride, ... and render each view."""
    if stride < 1:
        raise ValueError("stride must be >= 1")
    if not history:
        raise ValueError("history must contain at least one state")
    if not views:
        raise ValueError("at least one viewpoint required")
    if len({v.canvas for v in views}) != 1:
        raise ValueError("all viewpoints must share canvas dimensions")
    indices = list(range(0, len(history), stride))
    rows = tuple(
        tuple(render_view(history[i], view, draw_ee) for i in indices) for view in views
    )
    layout = "horizontal_row" if len(views) == 1 else "grid"
    return FrameStack(rows=rows, layout=layout, ticks=tuple(history[i].tick for i in indices))
