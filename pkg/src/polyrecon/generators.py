"""Standard polytopes as facet-vertex incidences, and random capped cubes."""

from __future__ import annotations

import random
from itertools import combinations, product

from polyrecon.lattice import PolytopeSpec, build_face_lattice, face_key


def simplex(d: int) -> PolytopeSpec:
    if d < 1:
        raise ValueError("d must be >= 1")
    return PolytopeSpec(f"simplex({d})", d + 1, tuple(combinations(range(d + 1), d)))


def cube(d: int) -> PolytopeSpec:
    """Vertices are the integers ``0..2^d-1`` read as bit vectors."""
    if d < 1:
        raise ValueError("d must be >= 1")
    n = 1 << d
    facets = []
    for j in range(d):
        for b in (0, 1):
            facets.append(tuple(v for v in range(n) if (v >> j) & 1 == b))
    return PolytopeSpec(f"cube({d})", n, tuple(sorted(facets)))


def cross_polytope(d: int) -> PolytopeSpec:
    """Antipodal pairs are ``(2i, 2i+1)``."""
    if d < 1:
        raise ValueError("d must be >= 1")
    facets = [tuple(2 * i + b for i, b in enumerate(bits)) for bits in product((0, 1), repeat=d)]
    return PolytopeSpec(f"cross({d})", 2 * d, tuple(sorted(facets)))


def polygon(n: int) -> PolytopeSpec:
    if n < 3:
        raise ValueError("a polygon needs at least 3 vertices")
    return PolytopeSpec(f"polygon({n})", n, tuple(sorted(face_key((i, (i + 1) % n)) for i in range(n))))


def pyramid(base: PolytopeSpec) -> PolytopeSpec:
    apex = base.n_vertices
    facets = [tuple(range(base.n_vertices))] + [tuple(f) + (apex,) for f in base.facets]
    return PolytopeSpec(f"pyramid({base.name})", base.n_vertices + 1, tuple(sorted(facets)))


def prism(n: int) -> PolytopeSpec:
    """Product of an n-gon with a segment; top vertex ``n+i`` sits over ``i``."""
    if n < 3:
        raise ValueError("a prism needs a polygon with at least 3 vertices")
    facets = [tuple(range(n)), tuple(range(n, 2 * n))]
    for i in range(n):
        j = (i + 1) % n
        facets.append(face_key((i, j, n + i, n + j)))
    return PolytopeSpec(f"prism({n})", 2 * n, tuple(sorted(facets)))


def _gale_even(subset: tuple[int, ...], n: int) -> bool:
    inside = set(subset)
    outside = [v for v in range(n) if v not in inside]
    for a, b in zip(outside, outside[1:]):
        if sum(1 for s in subset if a < s < b) % 2:
            return False
    return True


def cyclic(d: int, n: int) -> PolytopeSpec:
    """Cyclic polytope C(n, d) via Gale's evenness condition."""
    if not n > d >= 2:
        raise ValueError("need n > d >= 2")
    facets = tuple(s for s in combinations(range(n), d) if _gale_even(s, n))
    return PolytopeSpec(f"cyclic({d},{n})", n, facets)


def double_frustum(n: int = 3) -> PolytopeSpec:
    """Two n-gonal frusta glued along their large base.

    Rings of n vertices: top ``0..n-1``, waist ``n..2n-1``, bottom
    ``2n..3n-1``. The top and bottom n-gons share no vertex and no edge.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    facets = [tuple(range(n)), tuple(range(2 * n, 3 * n))]
    for i in range(n):
        j = (i + 1) % n
        facets.append(face_key((i, j, n + i, n + j)))
        facets.append(face_key((n + i, n + j, 2 * n + i, 2 * n + j)))
    return PolytopeSpec(f"double_frustum({n})", 3 * n, tuple(sorted(facets)))


def stacked_cubes() -> PolytopeSpec:
    """A 3-cube capped once over its first facet."""
    from polyrecon.cubical import cap_facet

    lat = build_face_lattice(cube(3))
    return cap_facet(lat, lat.facets[0], name="stacked-cubes")


def random_capped(d: int, n_caps: int, seed: int) -> tuple[PolytopeSpec, list[dict]]:
    """Iteratively cap ``cube(d)`` over uniformly chosen facets.

    Choices come from ``random.Random(seed).randrange`` over the current
    facets in lexicographic order; both are stable across platforms and
    Python versions, so a seed pins the fixture exactly.
    """
    from polyrecon.cubical import cap_facet

    if d < 2 or n_caps < 0:
        raise ValueError("need d >= 2 and n_caps >= 0")
    rng = random.Random(seed)
    spec = cube(d)
    log = []
    for step in range(n_caps):
        lat = build_face_lattice(spec)
        idx = rng.randrange(len(lat.facets))
        facet = lat.facets[idx]
        spec = cap_facet(lat, facet)
        log.append({"step": step, "seed": seed, "facet_index": idx, "facet": list(face_key(facet))})
    spec = PolytopeSpec(f"capped(d={d},caps={n_caps},seed={seed})", spec.n_vertices, spec.facets)
    return spec, log
