"""Edge-labeled vertex figures.

At a vertex ``v`` every facet through ``v`` is recorded only by the set of
edges through ``v`` that it contains. The face lattice of the vertex figure
is recovered as the intersection closure of those edge sets.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from itertools import combinations

from polyrecon.exceptions import ValidationError
from polyrecon.graphs import Edge, Graph, edge, regular_degree
from polyrecon.lattice import FaceLattice, face_key

Label = frozenset  # frozenset[Edge]


def _label_key(label: Iterable[Edge]) -> tuple[Edge, ...]:
    return tuple(sorted(label))


@dataclass(frozen=True)
class VertexFigureLabels:
    """Per-vertex family of edge sets, one per facet through the vertex."""

    by_vertex: Mapping[int, frozenset]

    @classmethod
    def from_lists(cls, data: Mapping[int, Iterable[Iterable[Iterable[int]]]]) -> "VertexFigureLabels":
        out = {}
        for v, labels in data.items():
            fam = set()
            for label in labels:
                fam.add(frozenset(edge(a, b) for a, b in label))
            out[int(v)] = frozenset(fam)
        return cls(dict(sorted(out.items())))

    def at(self, v: int) -> frozenset:
        return self.by_vertex.get(v, frozenset())

    def sorted_at(self, v: int) -> list[tuple[Edge, ...]]:
        return sorted(_label_key(lab) for lab in self.at(v))

    def vertices(self) -> list[int]:
        return sorted(self.by_vertex)

    def __eq__(self, other):
        if not isinstance(other, VertexFigureLabels):
            return NotImplemented
        return dict(self.by_vertex) == dict(other.by_vertex)

    __hash__ = None

    def check_against(self, g: Graph) -> None:
        """Raise unless labels are consistent with ``g``."""
        for v in range(g.n_nodes):
            at_v = set(g.incident_edges(v))
            fam = self.at(v)
            covered = set()
            for lab in fam:
                extra = set(lab) - at_v
                if extra:
                    raise ValidationError(f"label at vertex {v} uses edges {sorted(extra)} not incident to it")
                covered |= lab
            if covered != at_v:
                raise ValidationError(f"labels at vertex {v} do not cover edges {sorted(at_v - covered)}")
        stray = set(self.by_vertex) - set(range(g.n_nodes))
        if stray:
            raise ValidationError(f"labels given for vertices {sorted(stray)} outside the graph")


def extract_labels(lat: FaceLattice) -> VertexFigureLabels:
    """Ground-truth labels: for each facet F through v, the edges at v inside F."""
    edges_at: dict[int, list[frozenset]] = {v: [] for v in lat.vertices}
    for e in lat.edges:
        for v in e:
            edges_at[v].append(e)
    out = {}
    for v in lat.vertices:
        fam = set()
        for f in lat.facets:
            if v in f:
                fam.add(frozenset(edge(*face_key(e)) for e in edges_at[v] if e <= f))
        out[v] = frozenset(fam)
    return VertexFigureLabels(out)


def vf_lattice_from_labels(labels_at_v: Iterable[Iterable[Edge]]) -> frozenset:
    """Intersection closure of a label family, with the empty set and the
    full edge set at ``v`` adjoined."""
    family = {frozenset(lab) for lab in labels_at_v}
    top = frozenset().union(*family) if family else frozenset()
    closed = set(family)
    frontier = set(family)
    while frontier:
        new = {a & b for a in frontier for b in family} - closed
        closed |= new
        frontier = new
    closed.add(frozenset())
    closed.add(top)
    return frozenset(closed)


def simple_labels_from_graph(g: Graph) -> VertexFigureLabels:
    """All (d-1)-subsets of the d edges at each vertex of a d-regular graph."""
    d = regular_degree(g)
    if d is None or d < 1:
        raise ValidationError("not the graph of a simple polytope (non-regular)")
    out = {}
    for v in range(g.n_nodes):
        out[v] = frozenset(frozenset(c) for c in combinations(g.incident_edges(v), d - 1))
    return VertexFigureLabels(out)
