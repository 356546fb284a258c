"""Small 3D vector and axis-aligned box helpers shared across modules.

Everything works on plain float 3-tuples in millimeters. No numpy: the
simulator is desk-scale and determinism matters more than throughput.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

Vec3 = tuple[float, float, float]

ZERO: Vec3 = (0.0, 0.0, 0.0)


def vec3(x: float, y: float, z: float) -> Vec3:
    return (float(x), float(y), float(z))


def add(a: Vec3, b: Vec3) -> Vec3:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def sub(a: Vec3, b: Vec3) -> Vec3:
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def norm(a: Vec3) -> float:
    return math.sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2])


def dist(a: Vec3, b: Vec3) -> float:
    return norm(sub(a, b))


def dot(a: Vec3, b: Vec3) -> float:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


@dataclass(frozen=True)
class Aabb:
    """Axis-aligned box given by its min/max corners (mm)."""

    lo: Vec3
    hi: Vec3

    def __post_init__(self) -> None:
        if not all(l <= h for l, h in zip(self.lo, self.hi)):
            raise ValueError(f"degenerate AABB: lo={self.lo} hi={self.hi}")

    @classmethod
    def from_center(cls, center: Vec3, half_extents: Vec3) -> "Aabb":
        return cls(sub(center, half_extents), add(center, half_extents))

    @property
    def center(self) -> Vec3:
        return (
            (self.lo[0] + self.hi[0]) / 2.0,
            (self.lo[1] + self.hi[1]) / 2.0,
            (self.lo[2] + self.hi[2]) / 2.0,
        )

    def overlaps(self, other: "Aabb") -> bool:
        # Strict on every axis: boxes that merely touch do not overlap.
        return all(
            self.lo[i] < other.hi[i] and other.lo[i] < self.hi[i] for i in range(3)
        )

    def contains_point(self, p: Vec3) -> bool:
        return all(self.lo[i] <= p[i] <= self.hi[i] for i in range(3))

    def inflate(self, by: Vec3) -> "Aabb":
        return Aabb(sub(self.lo, by), add(self.hi, by))

    def union(self, other: "Aabb") -> "Aabb":
        return Aabb(
            tuple(min(self.lo[i], other.lo[i]) for i in range(3)),  # type: ignore[arg-type]
            tuple(max(self.hi[i], other.hi[i]) for i in range(3)),  # type: ignore[arg-type]
        )

    def intersects_segment(self, a: Vec3, b: Vec3) -> bool:
        """Slab test: does the segment a->b pass through this box?"""
        tmin, tmax = 0.0, 1.0
        for i in range(3):
            d = b[i] - a[i]
            if abs(d) < 1e-12:
                if a[i] <= self.lo[i] or a[i] >= self.hi[i]:
                    return False
                continue
            t1 = (self.lo[i] - a[i]) / d
            t2 = (self.hi[i] - a[i]) / d
            if t1 > t2:
                t1, t2 = t2, t1
            tmin = max(tmin, t1)
            tmax = min(tmax, t2)
            if tmin >= tmax:
                return False
        return True
