"""Kinematic-chain model parsed from URDF XML.

Only the structural subset matters here: robot/link/joint elements with
origin, axis, and limit children. Origins are normalized from URDF
meters to millimeters. The reach model is deliberately conservative: a
sphere whose radius is the largest root-to-leaf sum of joint origin
translation norms. A target beyond that radius is certainly out of
reach; a target within the margin of the radius sits near the
full-extension boundary singularity.
"""

from __future__ import annotations

import math
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field

from ..geometry import Vec3, dist


class MalformedXml(Exception):
    def __init__(self, position: tuple[int, int] | None, message: str):
        self.position = position
        super().__init__(message)


class CyclicChain(Exception):
    def __init__(self, link: str):
        self.link = link
        super().__init__(f"joint graph is not a tree at link {link!r}")


class DanglingReference(Exception):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"reference to unknown or unattached link {name!r}")


@dataclass(frozen=True)
class Link:
    name: str


@dataclass(frozen=True)
class Joint:
    name: str
    type: str  # fixed | revolute | prismatic | continuous
    parent: str
    child: str
    origin_mm: Vec3 = (0.0, 0.0, 0.0)
    axis: Vec3 = (0.0, 0.0, 1.0)
    limits: tuple[float, float] | None = None


@dataclass(frozen=True)
class RobotModel:
    name: str
    links: tuple[Link, ...]
    joints: tuple[Joint, ...]
    root: str

    def children(self, link: str) -> list[Joint]:
        return [j for j in self.joints if j.parent == link]

    def joint_to(self, link: str) -> Joint | None:
        for j in self.joints:
            if j.child == link:
                return j
        return None


@dataclass(frozen=True)
class ReachEnvelope:
    base_position: Vec3
    max_radius: float
    singularity_margin: float = 10.0

    def __post_init__(self) -> None:
        if self.max_radius < 0 or self.singularity_margin < 0:
            raise ValueError("radius and margin must be non-negative")


@dataclass(frozen=True)
class ReachResult:
    status: str  # "reachable" | "near_singularity" | "out_of_reach"
    margin_mm: float = 0.0  # meaningful for near_singularity
    deficit_mm: float = 0.0  # meaningful for out_of_reach


def _parse_vec(text: str | None) -> Vec3:
    if not text:
        return (0.0, 0.0, 0.0)
    parts = text.split()
    if len(parts) != 3:
        raise ValueError(f"expected 3 numbers, got {text!r}")
    return (float(parts[0]), float(parts[1]), float(parts[2]))


def parse_urdf(xml_text: str) -> RobotModel:
    """Parse URDF XML into the structural model.

    Raises MalformedXml for unparseable input, DanglingReference when a
    joint names an unknown link or the graph is disconnected, and
    CyclicChain when the parent/child graph is not a tree.
    """
    try:
        root_el = ET.fromstring(xml_text)
    except ET.ParseError as e:
        raise MalformedXml(getattr(e, "position", None), str(e)) from e
    if root_el.tag != "robot":
        raise MalformedXml(None, f"expected <robot> root element, got <{root_el.tag}>")

    links = tuple(
        Link(el.get("name", "")) for el in root_el.findall("link") if el.get("name")
    )
    link_names = {l.name for l in links}
    if not links:
        raise MalformedXml(None, "robot has no links")

    joints: list[Joint] = []
    for el in root_el.findall("joint"):
        name = el.get("name", "")
        jtype = el.get("type", "fixed")
        parent_el = el.find("parent")
        child_el = el.find("child")
        parent = parent_el.get("link", "") if parent_el is not None else ""
        child = child_el.get("link", "") if child_el is not None else ""
        for ref in (parent, child):
            if ref not in link_names:
                raise DanglingReference(ref)
        origin_el = el.find("origin")
        xyz_m = _parse_vec(origin_el.get("xyz") if origin_el is not None else None)
        origin_mm = (xyz_m[0] * 1000.0, xyz_m[1] * 1000.0, xyz_m[2] * 1000.0)
        axis_el = el.find("axis")
        axis = _parse_vec(axis_el.get("xyz")) if axis_el is not None else (0.0, 0.0, 1.0)
        limits = None
        limit_el = el.find("limit")
        if limit_el is not None and limit_el.get("lower") and limit_el.get("upper"):
            limits = (float(limit_el.get("lower")), float(limit_el.get("upper")))
        joints.append(
            Joint(name, jtype, parent, child, origin_mm=origin_mm, axis=axis, limits=limits)
        )

    parents: dict[str, str] = {}
    for j in joints:
        if j.child in parents:
            raise CyclicChain(j.child)
        parents[j.child] = j.parent

    # cycle check: walking up from any link must terminate
    for start in link_names:
        seen = {start}
        cur = start
        while cur in parents:
            cur = parents[cur]
            if cur in seen:
                raise CyclicChain(cur)
            seen.add(cur)

    roots = sorted(link_names - set(parents))
    if not roots:
        raise CyclicChain(next(iter(link_names)))
    if len(roots) > 1:
        raise DanglingReference(roots[1])

    return RobotModel(
        name=root_el.get("name", "robot"),
        links=links,
        joints=tuple(joints),
        root=roots[0],
    )


def chain_depth(model: RobotModel) -> int:
    """Number of links on the longest root-to-leaf path."""

    def walk(link: str) -> int:
        kids = model.children(link)
        if not kids:
            return 1
        return 1 + max(walk(j.child) for j in kids)

    return walk(model.root)


def _node_id(name: str) -> str:
    return re.sub(r"\W", "_", name)


def to_mermaid(model: RobotModel) -> str:
    """Flowchart of the link hierarchy: one node per link, one labeled edge per joint."""
    lines = ["graph TD"]
    for link in model.links:
        lines.append(f'    {_node_id(link.name)}["{link.name}"]')
    for j in model.joints:
        lines.append(
            f"    {_node_id(j.parent)} -->|{j.name} ({j.type})| {_node_id(j.child)}"
        )
    return "\n".join(lines)


_EDGE = re.compile(r"^\s*(\w+)\s*-->\|([^|]*)\|\s*(\w+)\s*$")


def parse_mermaid_edges(text: str) -> set[tuple[str, str]]:
    """Recover the (parent, child) relation set from a flowchart export."""
    edges = set()
    for line in text.splitlines():
        m = _EDGE.match(line)
        if m:
            edges.add((m.group(1), m.group(3)))
    return edges


def _max_path_radius(model: RobotModel) -> float:
    def walk(link: str) -> float:
        kids = model.children(link)
        if not kids:
            return 0.0
        return max(
            math.sqrt(sum(c * c for c in j.origin_mm)) + walk(j.child) for j in kids
        )

    return walk(model.root)


def reach_envelope(
    model: RobotModel, base_position: Vec3, singularity_margin: float = 10.0
) -> ReachEnvelope:
    return ReachEnvelope(
        base_position=base_position,
        max_radius=_max_path_radius(model),
        singularity_margin=singularity_margin,
    )


def reach_check(
    model: RobotModel,
    envelope_base: Vec3,
    target: Vec3,
    singularity_margin: float = 10.0,
) -> ReachResult:
    env = reach_envelope(model, envelope_base, singularity_margin)
    d = dist(envelope_base, target)
    if d > env.max_radius:
        return ReachResult("out_of_reach", deficit_mm=d - env.max_radius)
    if d > env.max_radius - env.singularity_margin:
        return ReachResult("near_singularity", margin_mm=env.max_radius - d)
    return ReachResult("reachable")


def summary_text(model: RobotModel) -> str:
    """Prompt-ready plain-text structure summary."""
    lines = [f"Robot: {model.name}", f"Links ({len(model.links)}):"]
    for link in model.links:
        lines.append(f"  - {link.name}")
    lines.append(f"Joints ({len(model.joints)}):")
    for j in model.joints:
        origin = "({:g}, {:g}, {:g}) mm".format(*j.origin_mm)
        extras = f", limits [{j.limits[0]:g}, {j.limits[1]:g}]" if j.limits else ""
        lines.append(
            f"  - {j.name}: {j.type}, {j.parent} -> {j.child}, origin {origin}{extras}"
        )
    lines.append(f"Max reach radius (conservative): {_max_path_radius(model):g} mm")
    return "\n".join(lines)
