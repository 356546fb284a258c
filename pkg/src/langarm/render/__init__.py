"""Deterministic flat-shaded orthographic scene rendering."""

from .raster import Raster, color_histogram, region_centroid_x, region_columns
from .scene import (
    CanvasTooSmall,
    EmptyRegion,
    FrameStack,
    Viewpoint,
    frame_stack,
    render_view,
    roi_zoom,
    viewport_region,
)

__all__ = [
    "CanvasTooSmall",
    "EmptyRegion",
    "FrameStack",
    "Raster",
    "Viewpoint",
    "color_histogram",
    "frame_stack",
    "region_centroid_x",
    "region_columns",
    "render_view",
    "roi_zoom",
    "viewport_region",
]
