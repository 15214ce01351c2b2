"""Cubical polytopes: audits, opposite-pair labels, capping, and reconstruction
of capped cubical polytopes from their dual graphs.

Everything here is combinatorial. Whether a cap is geometrically planar (the
distinction between a capped polytope and a combinatorially equivalent
non-capped one) is invisible at this level and plays no role.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product

from polyrecon.exceptions import NotCappedError, ReconstructionError, ValidationError
from polyrecon.generators import cube
from polyrecon.graphs import (
    Edge,
    Graph,
    dual_graph,
    edge,
    find_odd_cycle,
    find_triangle,
    graph_of,
    induced,
    is_complete_minus_perfect_matching,
    is_k_regular,
    regular_degree,
)
from polyrecon.lattice import (
    FaceLattice,
    PolytopeSpec,
    build_face_lattice,
    face_key,
    lattice_isomorphic,
)

log = logging.getLogger(__name__)


# -- abstract cubical complexes ------------------------------------------------


@dataclass(frozen=True)
class CubicalComplexSpec:
    """Facets with explicit cube certificates.

    ``certificates[i]`` maps each vertex of ``facets[i]`` to a distinct bit
    tuple of length ``k``; together they must cover ``{0,1}^k``.
    """

    name: str
    n_vertices: int
    facets: tuple[tuple[int, ...], ...]
    certificates: tuple[Mapping[int, tuple[int, ...]], ...]

    def validate(self) -> None:
        if len(self.facets) != len(self.certificates):
            raise ValidationError(f"{self.name}: one cube certificate per facet required")
        dims = set()
        for i, (facet, cert) in enumerate(zip(self.facets, self.certificates)):
            if set(cert) != set(facet):
                raise ValidationError(f"{self.name}: certificate {i} does not cover facet {list(facet)}")
            k = len(next(iter(cert.values())))
            dims.add(k)
            if set(cert.values()) != set(product((0, 1), repeat=k)) or len(cert) != 1 << k:
                raise ValidationError(f"{self.name}: certificate {i} is not a bijection onto {{0,1}}^{k}")
        if len(dims) != 1:
            raise ValidationError(f"{self.name}: facets have different dimensions {sorted(dims)}")
        covered = set().union(*map(set, self.facets))
        if covered != set(range(self.n_vertices)):
            raise ValidationError(f"{self.name}: vertices {sorted(set(range(self.n_vertices)) - covered)} lie in no facet")


def complex_lattice(spec: CubicalComplexSpec) -> FaceLattice:
    """All subcubes of all certified facets, with bottom and top added."""
    spec.validate()
    faces = {frozenset(), frozenset(range(spec.n_vertices))}
    for cert in spec.certificates:
        k = len(next(iter(cert.values())))
        for pattern in product((0, 1, None), repeat=k):
            faces.add(frozenset(v for v, bits in cert.items() if all(p is None or p == b for p, b in zip(pattern, bits))))
    return FaceLattice.from_faces(faces, name=spec.name)


def mobius_strip() -> CubicalComplexSpec:
    """Three quadrangles glued into a Moebius strip (9 edges, 6 vertices).

    Quadrangles in cyclic vertex order: 0-1-4-3, 1-2-5-4, 2-3-0-5.
    """
    quads = [(0, 1, 4, 3), (1, 2, 5, 4), (2, 3, 0, 5)]
    corners = [(0, 0), (1, 0), (1, 1), (0, 1)]
    certs = tuple({v: c for v, c in zip(q, corners)} for q in quads)
    return CubicalComplexSpec("mobius", 6, tuple(face_key(q) for q in quads), certs)


# -- combinatorial cubes -------------------------------------------------------


@lru_cache(maxsize=None)
def _cube_lattice(k: int) -> FaceLattice:
    if k == 0:
        return FaceLattice.from_faces([frozenset(), frozenset([0])])
    return build_face_lattice(cube(k))


def interval_below(lat: FaceLattice, face) -> FaceLattice:
    """The faces of ``face`` as a lattice on relabelled vertices ``0..k-1``."""
    face = frozenset(face)
    ids = {v: i for i, v in enumerate(face_key(face))}
    sub = [frozenset(ids[v] for v in f) for f in lat.faces if f <= face]
    return FaceLattice.from_faces(sub)


def is_cube_face(lat: FaceLattice, face) -> bool:
    k = lat.rank[frozenset(face)]
    if len(face) != 1 << k:
        return False
    return lattice_isomorphic(interval_below(lat, face), _cube_lattice(k))


def opposite_ridges(lat: FaceLattice, facet) -> list[tuple[frozenset, frozenset]]:
    """The pairs of disjoint ridges inside a cube facet."""
    facet = frozenset(facet)
    if facet not in lat.rank:
        raise ValidationError(f"{face_key(facet)} is not a face")
    if not is_cube_face(lat, facet):
        raise ValidationError(f"facet {face_key(facet)} is not a combinatorial cube")
    ridges = sorted(lat.lower_covers(facet), key=face_key)
    pairs = []
    for i, r in enumerate(ridges):
        for s in ridges[i + 1:]:
            if not r & s:
                pairs.append((r, s))
    return pairs


def is_cubical(lat: FaceLattice) -> bool:
    return all(is_cube_face(lat, f) for f in lat.facets)


# -- audits ----------------------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    passed: bool
    applicable: bool = True
    detail: str = ""
    witnesses: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "check": self.name,
            "applicable": self.applicable,
            "passed": self.passed,
            "detail": self.detail,
            "witnesses": self.witnesses,
        }


def _as_lattice(obj: FaceLattice | CubicalComplexSpec | PolytopeSpec) -> FaceLattice:
    if isinstance(obj, CubicalComplexSpec):
        return complex_lattice(obj)
    if isinstance(obj, PolytopeSpec):
        return build_face_lattice(obj)
    return obj


def check_no_odd_cycles(obj: FaceLattice | CubicalComplexSpec | PolytopeSpec) -> CheckResult:
    """Bipartiteness of the 1-skeleton of a cubical complex of dimension >= 2.

    For a polytope lattice the complex is its boundary, one dimension lower.
    """
    lat = _as_lattice(obj)
    complex_dim = lat.dimension - 1
    if complex_dim < 2:
        return CheckResult("no_odd_cycles", True, applicable=False,
                           detail=f"complex dimension {complex_dim} < 2; the statement needs dimension >= 2")
    cycle = find_odd_cycle(graph_of(lat))
    if cycle is None:
        return CheckResult("no_odd_cycles", True, detail="graph is bipartite")
    return CheckResult("no_odd_cycles", False, detail=f"odd cycle of length {len(cycle)}", witnesses=[cycle])


def check_triangle_free(obj) -> CheckResult:
    lat = _as_lattice(obj)
    tri = find_triangle(graph_of(lat))
    if tri is None:
        return CheckResult("triangle_free", True)
    return CheckResult("triangle_free", False, detail="triangle in graph", witnesses=[list(tri)])


@dataclass
class ThreeFacetReport:
    violations: list[tuple[frozenset, frozenset, frozenset]]
    applicable: bool = True

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def classes(self) -> list[frozenset]:
        """Violations grouped by their unordered facet triple."""
        seen = {frozenset(t) for t in self.violations}
        return sorted(seen, key=lambda s: sorted(face_key(f) for f in s))

    def to_check(self) -> CheckResult:
        wit = [[list(face_key(f)) for f in t] for t in self.violations]
        return CheckResult("three_facet", self.passed, self.applicable,
                           detail=f"{len(self.violations)} ordered violations in {len(self.classes)} classes",
                           witnesses=wit)


def check_three_facet_lemma(obj) -> ThreeFacetReport:
    """For facets A, B, C with A∩B and B∩C opposite ridges of B, require that
    A∩C is not a ridge. Reports every ordered violating triple."""
    lat = _as_lattice(obj)
    if lat.dimension < 3:
        return ThreeFacetReport([], applicable=False)
    facets = lat.facets
    ridges = set(lat.ridges)
    violations = []
    for b in facets:
        for r1, r2 in opposite_ridges(lat, b):
            for first, second in ((r1, r2), (r2, r1)):
                side_a = [f for f in facets if f != b and f & b == first]
                side_c = [f for f in facets if f != b and f & b == second]
                for a in side_a:
                    for c in side_c:
                        if a & c in ridges:
                            violations.append((a, b, c))
    return ThreeFacetReport(violations)


def audit(obj, *, is_complex: bool | None = None) -> dict:
    """Run every cubical audit and return a JSON-ready report."""
    if is_complex is None:
        is_complex = isinstance(obj, CubicalComplexSpec)
    lat = _as_lattice(obj)
    checks: list[CheckResult] = []
    non_cubes = [list(face_key(f)) for f in lat.facets if not is_cube_face(lat, f)]
    checks.append(CheckResult("cubical", not non_cubes, detail=f"{len(non_cubes)} non-cube facets", witnesses=non_cubes))
    checks.append(check_no_odd_cycles(lat))
    if lat.dimension >= 3:
        checks.append(check_triangle_free(lat))
    else:
        checks.append(CheckResult("triangle_free", True, applicable=False, detail="dimension < 3"))
    if is_complex:
        checks.append(CheckResult("dual_regular", True, applicable=False, detail="abstract complex, no dual polytope"))
    elif lat.dimension < 2:
        checks.append(CheckResult("dual_regular", True, applicable=False, detail="dimension < 2"))
    else:
        k = 2 * (lat.dimension - 1)
        try:
            dg = dual_graph(lat)
            ok = is_k_regular(dg, k)
            checks.append(CheckResult("dual_regular", ok, detail=f"expected degree {k}"))
        except ValidationError as exc:
            checks.append(CheckResult("dual_regular", False, detail=str(exc)))
    if non_cubes:
        checks.append(CheckResult("three_facet", False, applicable=False, detail="input is not cubical"))
    else:
        checks.append(check_three_facet_lemma(lat).to_check())
    passed = all(c.passed for c in checks if c.applicable)
    return {
        "name": lat.name,
        "dimension": lat.dimension,
        "passed": passed,
        "checks": [c.to_dict() for c in checks],
    }


# -- dual-graph labelling --------------------------------------------------------


def _facet_index(lat: FaceLattice, facet) -> int:
    if isinstance(facet, int):
        return facet
    return lat.facets.index(frozenset(facet))


def opposite_pairs_labeling(lat: FaceLattice, facet, dg: Graph | None = None) -> frozenset:
    """Edge labels at ``facet`` viewed as a vertex of the dual polytope.

    Each label is a (d-1)-set of dual-graph neighbours of ``facet`` that
    pairwise share at least one vertex, written as dual edges.
    """
    dg = dg if dg is not None else dual_graph(lat)
    i = _facet_index(lat, facet)
    facets = lat.facets
    omega = sorted(dg.neighbors(i))
    k = lat.dimension - 1
    labels = set()
    for group in combinations(omega, k):
        if all(facets[a] & facets[b] for a, b in combinations(group, 2)):
            labels.add(frozenset(edge(i, n) for n in group))
    return frozenset(labels)


# -- caps ------------------------------------------------------------------------


def _cap_degree(dg: Graph) -> int:
    k = regular_degree(dg)
    if k is None or k < 2 or k % 2:
        raise ValidationError("dual graph is not 2(d-1)-regular for any d >= 2")
    return k


def detect_caps(dg: Graph) -> list[tuple[int, list[Edge]]]:
    """Nodes whose neighbourhood induces a complete graph minus a perfect matching."""
    _cap_degree(dg)
    out = []
    for v in range(dg.n_nodes):
        m = is_complete_minus_perfect_matching(induced(dg, dg.neighbors(v)))
        if m is not None:
            out.append((v, m))
    return out


@dataclass(frozen=True)
class ContractionRecord:
    cap: int
    omega: frozenset[int]
    matching: tuple[Edge, ...]
    kept: tuple[int, ...]  # original ids of the surviving nodes, in new-id order
    new_node: int

    @property
    def contracted(self) -> frozenset[int]:
        return self.omega | {self.cap}


def contract_cap(dg: Graph, cap: int, matching: Sequence[Edge]) -> tuple[Graph, ContractionRecord]:
    """Merge the cap and its neighbours into one node (the last id)."""
    omega = frozenset(dg.neighbors(cap))
    gone = omega | {cap}
    kept = tuple(v for v in range(dg.n_nodes) if v not in gone)
    new_id = {v: i for i, v in enumerate(kept)}
    merged = len(kept)
    edges = set()
    for a, b in dg.edges:
        if a in new_id and b in new_id:
            edges.add(edge(new_id[a], new_id[b]))
        elif a in new_id and b in omega:
            edges.add(edge(new_id[a], merged))
        elif b in new_id and a in omega:
            edges.add(edge(new_id[b], merged))
    names = None
    if dg.node_names:
        names = {new_id[v]: dg.node_names[v] for v in kept if v in dg.node_names}
        names[merged] = "contracted"
    record = ContractionRecord(cap, omega, tuple(matching), kept, merged)
    return Graph(merged + 1, tuple(sorted(edges)), names), record


def cap_facet(lat: FaceLattice, facet, name: str | None = None) -> PolytopeSpec:
    """Glue a combinatorial cube onto ``facet``.

    Mirror vertices are appended in the sorted order of their originals; the
    cap is the mirror set and each ridge ``r`` of ``facet`` becomes the side
    facet ``r ∪ r'``.
    """
    facet = frozenset(facet)
    if facet not in lat.facets:
        raise ValidationError(f"{face_key(facet)} is not a facet")
    if not is_cube_face(lat, facet):
        raise ValidationError(f"facet {face_key(facet)} is not a combinatorial cube")
    n = lat.n_vertices
    mirror = {v: n + i for i, v in enumerate(face_key(facet))}
    new_facets = [face_key(f) for f in lat.facets if f != facet]
    new_facets.append(face_key(mirror.values()))
    for r in lat.lower_covers(facet):
        new_facets.append(face_key(set(r) | {mirror[v] for v in r}))
    label = name if name is not None else (f"{lat.name}+cap" if lat.name else "capped")
    return PolytopeSpec(label, n + len(mirror), tuple(sorted(new_facets)))


def _base_case(dg: Graph, d: int) -> tuple[FaceLattice, dict[int, frozenset]] | None:
    if dg.n_nodes != 2 * d:
        return None
    matching = is_complete_minus_perfect_matching(dg)
    if matching is None:
        return None
    lat = build_face_lattice(cube(d))
    n = 1 << d
    assign = {}
    for j, (a, b) in enumerate(matching):
        assign[a] = frozenset(v for v in range(n) if not (v >> j) & 1)
        assign[b] = frozenset(v for v in range(n) if (v >> j) & 1)
    return lat, assign


def _verify_assignment(dg: Graph, lat: FaceLattice, assign: Mapping[int, frozenset]) -> None:
    """The node -> facet map must be a bijection carrying dg onto the dual graph."""
    if sorted(assign) != list(range(dg.n_nodes)) or set(assign.values()) != set(lat.facets) \
            or len(set(assign.values())) != dg.n_nodes:
        raise ReconstructionError("internal error: node-to-facet map is not a bijection onto the facets")
    rebuilt = dual_graph(lat)
    index = {f: i for i, f in enumerate(lat.facets)}
    image = {edge(index[assign[a]], index[assign[b]]) for a, b in dg.edges}
    if image != rebuilt.edge_set:
        raise ReconstructionError("internal error: rebuilt polytope's dual graph does not match the input")


def _rebuild_over(dg: Graph, cap: int, matching, d: int) -> tuple[FaceLattice, dict[int, frozenset]]:
    small, rec = contract_cap(dg, cap, matching)
    lat_q, map_q = _reconstruct(small, d)
    base = map_q[rec.new_node]
    spec = cap_facet(lat_q, base)
    lat_p = build_face_lattice(spec)
    n_q = lat_q.n_vertices
    mirror = {v: n_q + i for i, v in enumerate(face_key(base))}

    assign: dict[int, frozenset] = {old: map_q[new] for new, old in enumerate(rec.kept)}
    assign[cap] = frozenset(mirror.values())

    # external facets of Q meeting each ridge r of the base facet, i.e. the
    # only old neighbours of the side facet r ∪ r'
    ridge_ext = {}
    for r in lat_q.lower_covers(base):
        ridge_ext[r] = frozenset(f for f in lat_q.facets if f != base and f & base == r)
    unused = dict(sorted(ridge_ext.items(), key=lambda kv: face_key(kv[0])))
    for node in sorted(rec.omega):
        ext = frozenset(assign[x] for x in dg.neighbors(node) if x not in rec.contracted)
        hits = [r for r, e in unused.items() if e == ext]
        if len(hits) != 1:
            raise ReconstructionError(
                f"side facet alignment failed for node {node}: {len(hits)} matching ridges"
            )
        r = hits[0]
        del unused[r]
        assign[node] = frozenset(set(r) | {mirror[v] for v in r})
    _verify_assignment(dg, lat_p, assign)
    return lat_p, assign


def _reconstruct(dg: Graph, d: int) -> tuple[FaceLattice, dict[int, frozenset]]:
    if regular_degree(dg) != 2 * (d - 1):
        raise NotCappedError(f"not recognized as capped: graph is not {2 * (d - 1)}-regular")
    base = _base_case(dg, d)
    if base is not None:
        return base
    if dg.n_nodes <= 2 * d:
        raise NotCappedError("not recognized as capped: too few facets and not a cube")
    caps = detect_caps(dg)
    if not caps:
        raise NotCappedError("not recognized as capped: no cap detected")
    cap, matching = caps[0]
    try:
        return _rebuild_over(dg, cap, matching, d)
    except NotCappedError:
        raise
    except ReconstructionError as exc:
        log.warning("detected cap %d did not rebuild (%s); flagged facet may not be a cap", cap, exc)
        raise


def reconstruct_capped_with_map(dg: Graph) -> tuple[FaceLattice, dict[int, frozenset]]:
    """Like :func:`reconstruct_capped`, also returning the node -> facet map."""
    try:
        k = _cap_degree(dg)
    except ValidationError as exc:
        raise NotCappedError(f"not recognized as capped: {exc}") from exc
    if not dg.is_connected():
        raise NotCappedError("not recognized as capped: dual graph is disconnected")
    d = k // 2 + 1
    lat, assign = _reconstruct(dg, d)
    return lat, dict(sorted(assign.items()))


def reconstruct_capped(dg: Graph) -> FaceLattice:
    """Face lattice of a capped cubical polytope from its dual graph alone.

    Caps are found by their neighbourhoods (complete graph minus a perfect
    matching), contracted away recursively down to a cube, and the polytope
    is rebuilt by re-capping; each level is checked against the input.
    """
    return reconstruct_capped_with_map(dg)[0]
