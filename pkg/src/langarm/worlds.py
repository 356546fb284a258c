"""Built-in scenario worlds.

These are the canonical desk setups used by the CLI, the HTTP service's
world registry, and the test suite: grasping with an obstacle in the
path, obstructed placement, attribute hazards, sorting, stacking, a safe
operating zone, and the fixed-order observation scene.
"""

from __future__ import annotations

from .geometry import Aabb
from .world import ObjectSpec, WorldState, Zone

CUBE_HALF = (15.0, 15.0, 15.0)
SMALL_HALF = (5.0, 5.0, 5.0)


def appendix_observation_world() -> WorldState:
    """Red and blue cubes at the canonical observation-list positions."""
    return WorldState(
        ee_pos=(0.0, 0.0, 0.0),
        objects=(
            ObjectSpec("blue", "blue", (-170.0, 190.0, 30.0), CUBE_HALF, attribute="ice"),
            ObjectSpec("red", "red", (110.0, 490.0, 140.0), CUBE_HALF, attribute="wood"),
        ),
    )


def obstructed_place_world() -> WorldState:
    """Placement scene: the blue cube already occupies the drop target."""
    return WorldState(
        ee_pos=(110.0, 490.0, 140.0),
        objects=(
            ObjectSpec("blue", "blue", (-270.0, 190.0, 30.0), CUBE_HALF, attribute="ice"),
            ObjectSpec("red", "red", (-170.0, 190.0, 30.0), CUBE_HALF, attribute="wood"),
        ),
    )


def _attribute_zones() -> tuple[Zone, Zone]:
    yellow = Zone(
        "yellow",
        "yellow",
        Aabb((150.0, 150.0, 0.0), (250.0, 250.0, 60.0)),
        attribute="fire",
    )
    green = Zone(
        "green",
        "green",
        Aabb((-250.0, 150.0, 0.0), (-150.0, 250.0, 60.0)),
        attribute="forest",
    )
    return yellow, green


def hazard_world() -> WorldState:
    """Wooden red cube and icy blue cube near fire and forest zones."""
    yellow, green = _attribute_zones()
    return WorldState(
        ee_pos=(0.0, 0.0, 50.0),
        objects=(
            ObjectSpec("blue", "blue", (-50.0, 0.0, 15.0), CUBE_HALF, attribute="ice"),
            ObjectSpec("red", "red", (50.0, 0.0, 15.0), CUBE_HALF, attribute="wood"),
        ),
        zones=(yellow, green),
    )


def sorting_world() -> WorldState:
    """Fire-attribute red cube and ice-attribute blue cube, two typed zones."""
    yellow, green = _attribute_zones()
    return WorldState(
        ee_pos=(0.0, 0.0, 50.0),
        objects=(
            ObjectSpec("blue", "blue", (-50.0, 0.0, 15.0), CUBE_HALF, attribute="ice"),
            ObjectSpec("red", "red", (50.0, 0.0, 15.0), CUBE_HALF, attribute="fire"),
        ),
        zones=(yellow, green),
    )


def obstacle_world() -> WorldState:
    """The avoidance fixture: a black obstacle between the EE and the cube.

    The obstacle spans x in [15, 45], z in [0, 8]; the canonical 71-step
    pattern (lift 10, traverse 50, descend 10, grasp) clears it with zero
    collision events.
    """
    return WorldState(
        ee_pos=(0.0, 0.0, 10.0),
        objects=(
            ObjectSpec(
                "obstacle",
                "black",
                (30.0, 0.0, 4.0),
                (15.0, 15.0, 4.0),
                graspable=False,
                fixed=True,
            ),
            ObjectSpec("red", "red", (50.0, 0.0, 10.0), SMALL_HALF, attribute="wood"),
        ),
    )


def safe_zone_world() -> WorldState:
    """A gray safe operating volume around the workspace."""
    return WorldState(
        ee_pos=(0.0, 0.0, 50.0),
        objects=(
            ObjectSpec("red", "red", (50.0, 0.0, 15.0), CUBE_HALF, attribute="wood"),
        ),
        zones=(
            Zone(
                "safe",
                "gray",
                Aabb((-150.0, -150.0, 0.0), (150.0, 150.0, 200.0)),
                attribute="safe",
            ),
        ),
    )


def stacking_world() -> WorldState:
    return WorldState(
        ee_pos=(0.0, 0.0, 80.0),
        objects=(
            ObjectSpec("blue", "blue", (100.0, 200.0, 15.0), CUBE_HALF, attribute="ice"),
            ObjectSpec("red", "red", (-100.0, 200.0, 15.0), CUBE_HALF, attribute="wood"),
        ),
    )


def zone_world() -> WorldState:
    """One red cube plus a drop zone named A."""
    return WorldState(
        ee_pos=(0.0, 0.0, 60.0),
        objects=(
            ObjectSpec("red", "red", (-80.0, 40.0, 15.0), CUBE_HALF, attribute="wood"),
        ),
        zones=(
            Zone("A", "A", Aabb((120.0, -40.0, 0.0), (220.0, 60.0, 80.0)), attribute=""),
        ),
    )


def alignment_world(offset_mm: float = 9.0) -> WorldState:
    """Gripper above a slightly misaligned cube, for ROI-zoom fixtures."""
    return WorldState(
        ee_pos=(0.0, 0.0, 40.0),
        objects=(
            ObjectSpec("red", "red", (offset_mm, 0.0, 10.0), SMALL_HALF, attribute="wood"),
        ),
    )


BUILTIN_WORLDS = {
    "observation": appendix_observation_world,
    "obstructed_place": obstructed_place_world,
    "hazard": hazard_world,
    "sorting": sorting_world,
    "obstacle": obstacle_world,
    "safe_zone": safe_zone_world,
    "stacking": stacking_world,
    "zone": zone_world,
    "alignment": alignment_world,
}


def builtin_world(name: str) -> WorldState:
    try:
        factory = BUILTIN_WORLDS[name]
    except KeyError:
        raise KeyError(
            f"unknown world {name!r}; available: {', '.join(sorted(BUILTIN_WORLDS))}"
        ) from None
    return factory()
