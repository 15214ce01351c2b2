"""Named fixture families used by the test suite and the acceptance run."""

from __future__ import annotations

from polyrecon import generators as gen
from polyrecon.lattice import PolytopeSpec

# polytopes small enough for exhaustive orientation enumeration
GENERAL = {
    "triangle": lambda: gen.polygon(3),
    "square": lambda: gen.polygon(4),
    "simplex3": lambda: gen.simplex(3),
    "square_pyramid": lambda: gen.pyramid(gen.polygon(4)),
    "triangular_prism": lambda: gen.prism(3),
    "octahedron": lambda: gen.cross_polytope(3),
    "cube3": lambda: gen.cube(3),
}

# non-empty face counts, each checked independently against the closure
GENERAL_FACE_COUNTS = {
    "triangle": 7,
    "square": 9,
    "simplex3": 15,
    "square_pyramid": 19,
    "triangular_prism": 21,
    "octahedron": 27,
    "cube3": 27,
}

SIMPLE = ("simplex3", "cube3", "triangular_prism")


def general_fixtures() -> dict[str, PolytopeSpec]:
    return {name: make() for name, make in GENERAL.items()}


def capped_suite() -> list[tuple[PolytopeSpec, list[dict], int]]:
    """Twenty seeded capped cubes: ten with d=3 and 1..5 caps, ten with d=4
    and 1..3 caps. Entries are ``(spec, capping log, d)``."""
    out = []
    for seed in range(10):
        spec, log = gen.random_capped(3, 1 + seed % 5, seed)
        out.append((spec, log, 3))
    for seed in range(10):
        spec, log = gen.random_capped(4, 1 + seed % 3, seed)
        out.append((spec, log, 4))
    return out


def cubical_suite() -> list[tuple[PolytopeSpec, int]]:
    """cube(3), cube(4), the stacked cubes and the capped suite."""
    out = [(gen.cube(3), 3), (gen.cube(4), 4), (gen.stacked_cubes(), 3)]
    out += [(spec, d) for spec, _, d in capped_suite()]
    return out
