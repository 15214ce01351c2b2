"""Face-lattice reconstruction from a graph and its edge-labeled vertex figures.

Facets are recovered as F-subgraphs: inclusion-minimal non-empty induced
subgraphs that (i) are initial for some good acyclic orientation and (ii) at
each of their vertices ``v`` carry exactly the edges of some label at ``v``.
The good orientations come from :func:`find_good_orientations`.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

from polyrecon.exceptions import InstanceTooLarge, ReconstructionError, ValidationError
from polyrecon.graphs import Graph, InducedSubgraph, graph_of, induced
from polyrecon.labels import VertexFigureLabels, extract_labels, simple_labels_from_graph
from polyrecon.lattice import FaceLattice, PolytopeSpec, build_face_lattice, face_key, validate_polytopality
from polyrecon.orientations import MAX_COUNT, MAX_EDGES, Orientation, find_good_orientations

MAX_NODES = 24


def satisfies_label_condition(c: InducedSubgraph | Iterable[int], labels: VertexFigureLabels, g: Graph | None = None) -> bool:
    """Every vertex of the candidate sees exactly the edges of one of its labels.

    Several matching labels are fine; uniqueness is not needed.
    """
    if not isinstance(c, InducedSubgraph):
        if g is None:
            raise TypeError("a plain vertex set needs the parent graph")
        c = induced(g, c)
    return all(c.edges_at(v) in labels.at(v) for v in c.nodes)


def _label_candidates(g: Graph, labels: VertexFigureLabels) -> list[int]:
    """Vertex subsets (bitmasks) passing the label condition.

    Vertices are decided in id order; a vertex is checked as soon as all its
    neighbours have been decided, which prunes most branches early.
    """
    n = g.n_nodes
    adj = [0] * n
    for a, b in g.edges:
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    # label families as neighbour bitmasks
    fam = []
    for v in range(n):
        masks = set()
        for lab in labels.at(v):
            m = 0
            for a, b in lab:
                m |= 1 << (b if a == v else a)
            masks.add(m)
        fam.append(masks)
    ready_at: list[list[int]] = [[] for _ in range(n)]
    for v in range(n):
        last = max([v] + [w for w in range(n) if adj[v] >> w & 1])
        ready_at[last].append(v)

    out = []

    def rec(i: int, chosen: int):
        if i == n:
            if chosen:
                out.append(chosen)
            return
        for bit in (1, 0):
            c = chosen | (bit << i)
            if all(not c >> v & 1 or (adj[v] & c) in fam[v] for v in ready_at[i]):
                rec(i + 1, c)

    rec(0, 0)
    return out


def _initial_for_some(mask: int, in_masks: Sequence[Sequence[int]], n: int) -> bool:
    members = [v for v in range(n) if mask >> v & 1]
    outside = ~mask
    for inm in in_masks:
        if all(not inm[v] & outside for v in members):
            return True
    return False


def _in_masks(good: Iterable[Orientation]) -> list[list[int]]:
    out = []
    for o in good:
        row = [0] * o.graph.n_nodes
        for a, b in o.arcs:
            row[b] |= 1 << a
        out.append(row)
    return out


def _minimal(masks: list[int]) -> list[int]:
    masks = sorted(set(masks), key=lambda m: (bin(m).count("1"), m))
    kept: list[int] = []
    for m in masks:
        if not any(k & m == k for k in kept):
            kept.append(m)
    return kept


def _to_sets(masks: Iterable[int], n: int) -> list[frozenset[int]]:
    sets = [frozenset(v for v in range(n) if m >> v & 1) for m in masks]
    return sorted(sets, key=face_key)


def _check_nodes(g: Graph) -> None:
    if g.n_nodes > MAX_NODES:
        raise InstanceTooLarge(f"instance too large: {g.n_nodes} vertices exceeds the bound of {MAX_NODES}")


def candidate_family(
    g: Graph,
    labels: VertexFigureLabels,
    good: Sequence[Orientation] | None = None,
    **limits,
) -> list[frozenset[int]]:
    """Vertex sets satisfying conditions (i) and (ii) but not necessarily minimal."""
    _check_nodes(g)
    if good is None:
        good = find_good_orientations(g, labels, **limits).good
    in_masks = _in_masks(good)
    survivors = [m for m in _label_candidates(g, labels) if _initial_for_some(m, in_masks, g.n_nodes)]
    return _to_sets(survivors, g.n_nodes)


def find_F_subgraphs(
    g: Graph,
    labels: VertexFigureLabels,
    *,
    max_edges: int = MAX_EDGES,
    max_count: int = MAX_COUNT,
    workers: int = 1,
) -> list[frozenset[int]]:
    """Vertex sets of the F-subgraphs of ``g``, lexicographically sorted."""
    _check_nodes(g)
    labels.check_against(g)
    good = find_good_orientations(g, labels, max_edges=max_edges, max_count=max_count, workers=workers).good
    in_masks = _in_masks(good)
    survivors = [m for m in _label_candidates(g, labels) if _initial_for_some(m, in_masks, g.n_nodes)]
    return _to_sets(_minimal(survivors), g.n_nodes)


def lattice_from_facets(facets: Sequence[Iterable[int]], n_vertices: int, name: str) -> FaceLattice:
    """Build and validate a lattice from recovered facets or fail loudly."""
    spec = PolytopeSpec(name, n_vertices, tuple(face_key(f) for f in facets))
    try:
        lat = build_face_lattice(spec)
    except ValidationError as exc:
        raise ReconstructionError(f"input not recognized as polytopal: {exc}") from exc
    report = validate_polytopality(lat)
    if not report.ok:
        first = report.violations[0]
        raise ReconstructionError(f"input not recognized as polytopal: {first.check}: {first.detail}")
    return lat


def reconstruct_lattice(g: Graph, labels: VertexFigureLabels, *, name: str = "reconstructed", **limits) -> FaceLattice:
    """Face lattice from the graph and the edge-labeled vertex figures."""
    facets = find_F_subgraphs(g, labels, **limits)
    for f in facets:
        if not induced(g, f).is_connected():
            raise ReconstructionError(f"input not recognized as polytopal: F-subgraph {face_key(f)} is disconnected")
    lat = lattice_from_facets(facets, g.n_nodes, name)
    # the output must reproduce its own input, otherwise the input was not polytopal
    if graph_of(lat).edge_set != g.edge_set:
        raise ReconstructionError("input not recognized as polytopal: recovered lattice has a different graph")
    if extract_labels(lat) != labels:
        raise ReconstructionError("input not recognized as polytopal: recovered lattice has different vertex-figure labels")
    return lat


def reconstruct_simple(g: Graph, *, name: str = "reconstructed-simple", **limits) -> FaceLattice:
    """Face lattice of a simple polytope from its graph alone."""
    if not g.is_connected():
        raise ValidationError("not the graph of a simple polytope (disconnected)")
    return reconstruct_lattice(g, simple_labels_from_graph(g), name=name, **limits)
