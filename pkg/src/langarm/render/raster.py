"""Plain RGB raster with lossless PPM output.

PPM needs no codec, which keeps golden-image tests byte-stable. PNG
export is available through Pillow for anything that wants a viewer-
friendly file.
"""

from __future__ import annotations

from pathlib import Path

Color = tuple[int, int, int]


class Raster:
    def __init__(self, width: int, height: int, background: Color = (255, 255, 255)):
        if width <= 0 or height <= 0:
            raise ValueError("raster dimensions must be positive")
        self.width = width
        self.height = height
        self.pixels = bytearray(width * height * 3)
        r, g, b = background
        for i in range(0, len(self.pixels), 3):
            self.pixels[i] = r
            self.pixels[i + 1] = g
            self.pixels[i + 2] = b

    def get(self, x: int, y: int) -> Color:
        i = (y * self.width + x) * 3
        return (self.pixels[i], self.pixels[i + 1], self.pixels[i + 2])

    def set(self, x: int, y: int, color: Color) -> None:
        if 0 <= x < self.width and 0 <= y < self.height:
            i = (y * self.width + x) * 3
            self.pixels[i] = color[0]
            self.pixels[i + 1] = color[1]
            self.pixels[i + 2] = color[2]

    def fill_rect(self, x0: int, y0: int, x1: int, y1: int, color: Color) -> None:
        """Fill [x0, x1) x [y0, y1), clipped to the canvas."""
        x0 = max(0, x0)
        y0 = max(0, y0)
        x1 = min(self.width, x1)
        y1 = min(self.height, y1)
        r, g, b = color
        for y in range(y0, y1):
            base = (y * self.width + x0) * 3
            for _ in range(x0, x1):
                self.pixels[base] = r
                self.pixels[base + 1] = g
                self.pixels[base + 2] = b
                base += 3

    def outline_rect(self, x0: int, y0: int, x1: int, y1: int, color: Color) -> None:
        """1px perimeter of [x0, x1) x [y0, y1)."""
        if x1 <= x0 or y1 <= y0:
            return
        self.fill_rect(x0, y0, x1, y0 + 1, color)
        self.fill_rect(x0, y1 - 1, x1, y1, color)
        self.fill_rect(x0, y0, x0 + 1, y1, color)
        self.fill_rect(x1 - 1, y0, x1, y1, color)

    def to_ppm(self) -> bytes:
        header = f"P6 {self.width} {self.height} 255\n".encode("ascii")
        return header + bytes(self.pixels)

    def save_ppm(self, path: str | Path) -> None:
        Path(path).write_bytes(self.to_ppm())

    def save_png(self, path: str | Path) -> None:
        from PIL import Image  # optional output format; imported lazily

        img = Image.frombytes("RGB", (self.width, self.height), bytes(self.pixels))
        img.save(path, format="PNG")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Raster)
            and self.width == other.width
            and self.height == other.height
            and self.pixels == other.pixels
        )


def color_histogram(raster: Raster) -> dict[Color, int]:
    out: dict[Color, int] = {}
    px = raster.pixels
    for i in range(0, len(px), 3):
        c = (px[i], px[i + 1], px[i + 2])
        out[c] = out.get(c, 0) + 1
    return out


def region_columns(raster: Raster, color: Color) -> list[int]:
    cols = []
    for x in range(raster.width):
        for y in range(raster.height):
            if raster.get(x, y) == color:
                cols.append(x)
                break
    return cols


def region_centroid_x(raster: Raster, color: Color) -> float:
    """Mean x of all pixels of the color; the alignment oracle."""
    total = 0
    count = 0
    for y in range(raster.height):
        for x in range(raster.width):
            if raster.get(x, y) == color:
                total += x
                count += 1
    if count == 0:
        raise ValueError(f"no pixels of color {color}")
    return total / count
