"""Face lattices built from facet-vertex incidences.

A face is a ``frozenset`` of vertex ids. Lattices keep their faces sorted by
``(rank, sorted vertex tuple)`` so that every derived listing is deterministic.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

from polyrecon import _iso
from polyrecon.exceptions import ValidationError

Face = frozenset


def face_key(face: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(face))


def _mask(face: Iterable[int]) -> int:
    m = 0
    for v in face:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class PolytopeSpec:
    """Named facet-vertex incidence description of a polytope."""

    name: str
    n_vertices: int
    facets: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "facets", tuple(face_key(f) for f in self.facets))

    def validate(self) -> None:
        """Raise :class:`ValidationError` naming the first offending facet."""
        if self.n_vertices < 1:
            raise ValidationError(f"{self.name}: n_vertices must be positive")
        if not self.facets:
            raise ValidationError(f"{self.name}: no facets given")
        full = set(range(self.n_vertices))
        seen: dict[tuple[int, ...], int] = {}
        for i, facet in enumerate(self.facets):
            if not facet:
                raise ValidationError(f"{self.name}: facet {i} is empty")
            bad = [v for v in facet if v not in full]
            if bad:
                raise ValidationError(f"{self.name}: facet {i} {list(facet)} has vertex ids out of range {bad}")
            if len(set(facet)) != len(facet):
                raise ValidationError(f"{self.name}: facet {i} {list(facet)} repeats a vertex")
            if set(facet) == full:
                raise ValidationError(f"{self.name}: facet {i} {list(facet)} contains every vertex")
            if facet in seen:
                raise ValidationError(f"{self.name}: facet {i} {list(facet)} duplicates facet {seen[facet]}")
            seen[facet] = i
        sets = [frozenset(f) for f in self.facets]
        for i, a in enumerate(sets):
            for j, b in enumerate(sets):
                if i != j and a < b:
                    raise ValidationError(
                        f"{self.name}: facet {i} {list(self.facets[i])} is contained in facet {j} {list(self.facets[j])}"
                    )
        covered = set().union(*sets)
        missing = sorted(full - covered)
        if missing:
            raise ValidationError(f"{self.name}: vertices {missing} lie in no facet")


class FaceRecord(NamedTuple):
    vertices: frozenset
    rank: int


@dataclass(frozen=True)
class FaceLattice:
    """Faces of a polytope (or abstract complex) ordered by inclusion.

    Ranks are longest-chain heights: ``rank(∅) = -1``, vertices get 0 and the
    top element gets the dimension.
    """

    faces: tuple[frozenset, ...]
    rank: dict = field(compare=False, repr=False)
    name: str = field(default="", compare=False)

    @classmethod
    def from_faces(cls, faces: Iterable[Iterable[int]], name: str = "") -> "FaceLattice":
        uniq = {frozenset(f) for f in faces}
        by_size = sorted(uniq, key=lambda f: (len(f), face_key(f)))
        masks = [_mask(f) for f in by_size]
        ranks: list[int] = []
        for i, (f, m) in enumerate(zip(by_size, masks)):
            if not f:
                ranks.append(-1)
                continue
            best = -1
            for j in range(i):
                mj = masks[j]
                if mj != m and mj & m == mj and ranks[j] > best:
                    best = ranks[j]
            ranks.append(best + 1)
        rank = dict(zip(by_size, ranks))
        ordered = tuple(sorted(uniq, key=lambda f: (rank[f], face_key(f))))
        return cls(ordered, rank, name)

    def __iter__(self) -> Iterator[FaceRecord]:
        for f in self.faces:
            yield FaceRecord(f, self.rank[f])

    def __len__(self) -> int:
        return len(self.faces)

    def __contains__(self, face) -> bool:
        return frozenset(face) in self.rank

    @cached_property
    def top(self) -> frozenset:
        return max(self.faces, key=lambda f: (self.rank[f], len(f)))

    @property
    def dimension(self) -> int:
        return self.rank[self.top]

    @property
    def n_vertices(self) -> int:
        return len(self.top)

    def faces_of_rank(self, r: int) -> tuple[frozenset, ...]:
        return tuple(f for f in self.faces if self.rank[f] == r)

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return face_key(self.top)

    @cached_property
    def edges(self) -> tuple[frozenset, ...]:
        return self.faces_of_rank(1)

    @cached_property
    def facets(self) -> tuple[frozenset, ...]:
        """Rank d-1 faces, lexicographically ordered by sorted vertex tuple."""
        return self.faces_of_rank(self.dimension - 1)

    @cached_property
    def ridges(self) -> tuple[frozenset, ...]:
        return self.faces_of_rank(self.dimension - 2)

    @cached_property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self.faces_of_rank(r)) for r in range(0, self.dimension + 1))

    @cached_property
    def _lower_covers(self) -> dict[frozenset, tuple[frozenset, ...]]:
        masks = {f: _mask(f) for f in self.faces}
        by_size_desc = sorted(self.faces, key=lambda f: (-len(f), face_key(f)))
        out = {}
        for y in self.faces:
            my = masks[y]
            kept: list[int] = []
            kept_faces = []
            for x in by_size_desc:
                mx = masks[x]
                if mx == my or mx & my != mx:
                    continue
                if any(mx & k == mx for k in kept):
                    continue
                kept.append(mx)
                kept_faces.append(x)
            out[y] = tuple(sorted(kept_faces, key=face_key))
        return out

    def lower_covers(self, face) -> tuple[frozenset, ...]:
        return self._lower_covers[frozenset(face)]

    @cached_property
    def _upper_covers(self) -> dict[frozenset, tuple[frozenset, ...]]:
        up: dict[frozenset, list] = {f: [] for f in self.faces}
        for y in self.faces:
            for x in self._lower_covers[y]:
                up[x].append(y)
        return {f: tuple(sorted(v, key=face_key)) for f, v in up.items()}

    def upper_covers(self, face) -> tuple[frozenset, ...]:
        return self._upper_covers[frozenset(face)]

    def faces_containing(self, face) -> tuple[frozenset, ...]:
        face = frozenset(face)
        return tuple(f for f in self.faces if face <= f)

    def to_spec(self, name: str | None = None) -> PolytopeSpec:
        return PolytopeSpec(name if name is not None else self.name, self.n_vertices, tuple(face_key(f) for f in self.facets))


def build_face_lattice(spec: PolytopeSpec) -> FaceLattice:
    """Close the facet family under intersection and add bottom and top."""
    spec.validate()
    facets = [frozenset(f) for f in spec.facets]
    top = frozenset(range(spec.n_vertices))
    faces = {top}
    frontier = {top}
    while frontier:
        new = {f & g for f in frontier for g in facets} - faces
        faces |= new
        frontier = new
    faces.add(frozenset())
    return FaceLattice.from_faces(faces, name=spec.name)


def dimension(lat: FaceLattice) -> int:
    return lat.dimension


def count_nonempty_faces(lat: FaceLattice) -> int:
    """Number of non-empty faces, the polytope itself included."""
    return len(lat.faces) - (1 if frozenset() in lat.rank else 0)


def dual_lattice(lat: FaceLattice) -> FaceLattice:
    """Order-reversed lattice whose vertices are the original facets.

    Dual vertex ``i`` is ``lat.facets[i]``; the dual face of ``G`` is the set
    of facets containing ``G``.
    """
    facets = lat.facets
    dual_faces = []
    for g in lat.faces:
        dual_faces.append(frozenset(i for i, f in enumerate(facets) if g <= f))
    return FaceLattice.from_faces(dual_faces, name=f"dual({lat.name})" if lat.name else "dual")


def _hasse(lat: FaceLattice) -> tuple[list[list[int]], list[tuple[int, int, int]]]:
    index = {f: i for i, f in enumerate(lat.faces)}
    adj: list[list[int]] = [[] for _ in lat.faces]
    for y in lat.faces:
        for x in lat.lower_covers(y):
            adj[index[x]].append(index[y])
            adj[index[y]].append(index[x])
    colors = [(lat.rank[f], len(lat.upper_covers(f)), len(lat.lower_covers(f))) for f in lat.faces]
    return adj, colors


def find_lattice_isomorphism(a: FaceLattice, b: FaceLattice) -> dict[frozenset, frozenset] | None:
    """Rank-preserving order isomorphism ``a -> b`` as a face map, or None."""
    if len(a) != len(b) or a.f_vector != b.f_vector:
        return None
    adj_a, col_a = _hasse(a)
    adj_b, col_b = _hasse(b)
    m = _iso.find_isomorphism(adj_a, adj_b, col_a, col_b)
    if m is None:
        return None
    return {a.faces[i]: b.faces[j] for i, j in m.items()}


def lattice_isomorphic(a: FaceLattice, b: FaceLattice) -> bool:
    return find_lattice_isomorphism(a, b) is not None


def atom_map(face_map: dict[frozenset, frozenset]) -> dict[int, int]:
    """Restrict a face isomorphism to singleton atoms, giving a vertex map."""
    out = {}
    for x, y in face_map.items():
        if len(x) == 1 and len(y) == 1:
            out[next(iter(x))] = next(iter(y))
    return dict(sorted(out.items()))


class Violation(NamedTuple):
    check: str
    detail: str


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def checks_failed(self) -> set[str]:
        return {v.check for v in self.violations}

    def to_dict(self) -> dict:
        return {"ok": self.ok, "violations": [{"check": v.check, "detail": v.detail} for v in self.violations]}


def validate_polytopality(lat: FaceLattice) -> ValidationReport:
    """Check bounds, intersection closure, gradedness, diamond property,
    atomicity and coatomicity. Never raises; violations are collected."""
    report = ValidationReport()
    add = report.violations.append
    faces = lat.faces
    empty = frozenset()
    if empty not in lat.rank:
        add(Violation("bounds", "empty face missing"))
    top = lat.top
    for f in faces:
        if not f <= top:
            add(Violation("bounds", f"face {face_key(f)} not below the top element"))

    present = lat.rank
    for i, f in enumerate(faces):
        for g in faces[i + 1:]:
            meet = f & g
            if meet not in present:
                add(Violation("closure", f"{face_key(f)} & {face_key(g)} = {face_key(meet)} is not a face"))

    for y in faces:
        for x in lat.lower_covers(y):
            if lat.rank[y] != lat.rank[x] + 1:
                add(Violation("graded", f"cover {face_key(x)} < {face_key(y)} jumps rank {lat.rank[x]} -> {lat.rank[y]}"))

    for x in faces:
        middle: dict[frozenset, int] = {}
        for z in lat.upper_covers(x):
            for y in lat.upper_covers(z):
                middle[y] = middle.get(y, 0) + 1
        for y, count in middle.items():
            if lat.rank[y] - lat.rank[x] == 2 and count != 2:
                add(Violation("diamond", f"interval [{face_key(x)}, {face_key(y)}] has {count + 2} elements"))

    for f in lat.faces_of_rank(0):
        if len(f) != 1:
            add(Violation("atomic", f"atom {face_key(f)} is not a single vertex"))
    for v in face_key(top):
        if frozenset([v]) not in present:
            add(Violation("atomic", f"vertex {v} is not a face"))

    coatoms = lat.lower_covers(top)
    for f in faces:
        if f == top:
            continue
        above = [c for c in coatoms if f <= c]
        meet = frozenset.intersection(*above) if above else top
        if meet != f:
            add(Violation("coatomic", f"face {face_key(f)} is not the intersection of the facets containing it"))
    return report
