"""Acyclic orientations of polytope graphs and the sink-count score.

Every acyclic orientation ``O`` is scored by ``f^O``, the number of pairs
(face, vertex) where the vertex is a sink of the face. Only the vertex-figure
labels are needed for that count, and the good orientations (one sink per
non-empty face) are exactly the minimisers.

Enumeration uses longest-path layerings: layer 0 is the set of all sources,
each later layer is an independent set every member of which has a neighbour
in the previous layer. Such layerings are in bijection with acyclic
orientations, so nothing has to be filtered.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cached_property

from polyrecon.exceptions import InstanceTooLarge, ValidationError
from polyrecon.graphs import Edge, Graph, edge
from polyrecon.labels import VertexFigureLabels, vf_lattice_from_labels
from polyrecon.lattice import FaceLattice, face_key

MAX_EDGES = 36
MAX_COUNT = 10**7


@dataclass(frozen=True)
class Orientation:
    """Directed copy of ``graph``; ``arcs[i]`` orients ``graph.edges[i]``."""

    graph: Graph
    arcs: tuple[tuple[int, int], ...]

    @classmethod
    def from_arcs(cls, graph: Graph, arcs: Iterable[tuple[int, int]]) -> "Orientation":
        given = {edge(a, b): (a, b) for a, b in arcs}
        if set(given) != graph.edge_set or len(given) != len(graph.edges):
            raise ValidationError("arcs must orient every graph edge exactly once")
        return cls(graph, tuple(given[e] for e in graph.edges))

    @classmethod
    def from_order(cls, graph: Graph, order: Iterable[int]) -> "Orientation":
        """Orient every edge from the earlier to the later vertex of ``order``."""
        pos = {v: i for i, v in enumerate(order)}
        return cls(graph, tuple((a, b) if pos[a] < pos[b] else (b, a) for a, b in graph.edges))

    @cached_property
    def in_neighbors(self) -> tuple[frozenset[int], ...]:
        inn: list[set[int]] = [set() for _ in range(self.graph.n_nodes)]
        for a, b in self.arcs:
            inn[b].add(a)
        return tuple(frozenset(s) for s in inn)

    @cached_property
    def out_neighbors(self) -> tuple[frozenset[int], ...]:
        out: list[set[int]] = [set() for _ in range(self.graph.n_nodes)]
        for a, b in self.arcs:
            out[a].add(b)
        return tuple(frozenset(s) for s in out)

    def in_edges(self, v: int) -> frozenset[Edge]:
        return frozenset(edge(u, v) for u in self.in_neighbors[v])

    def sinks(self) -> list[int]:
        return [v for v in range(self.graph.n_nodes) if not self.out_neighbors[v]]

    def sources(self) -> list[int]:
        return [v for v in range(self.graph.n_nodes) if not self.in_neighbors[v]]

    def is_acyclic(self) -> bool:
        indeg = [len(s) for s in self.in_neighbors]
        stack = [v for v, d in enumerate(indeg) if d == 0]
        seen = 0
        while stack:
            u = stack.pop()
            seen += 1
            for w in self.out_neighbors[u]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    stack.append(w)
        return seen == self.graph.n_nodes


@dataclass(frozen=True)
class OrientationScore:
    per_vertex: tuple[int, ...]
    total: int


def _check_size(g: Graph, max_edges: int) -> None:
    if len(g.edges) > max_edges:
        raise InstanceTooLarge(f"instance too large: {len(g.edges)} edges exceeds the bound of {max_edges}")


def _independent_subsets(cands: list[int], adj: list[int]) -> Iterator[int]:
    """Non-empty independent subsets of ``cands`` as bitmasks, in a fixed order."""

    def rec(i: int, chosen: int, blocked: int):
        if i == len(cands):
            if chosen:
                yield chosen
            return
        v = cands[i]
        if not blocked >> v & 1:
            yield from rec(i + 1, chosen | 1 << v, blocked | adj[v])
        yield from rec(i + 1, chosen, blocked)

    yield from rec(0, 0, 0)


def _layerings(adj: list[int], remaining: int, prev: int, depth: int, layer: list[int]) -> Iterator[list[int]]:
    if not remaining:
        yield layer
        return
    cands = [v for v in range(len(adj)) if remaining >> v & 1 and (depth == 0 or adj[v] & prev)]
    for chosen in _independent_subsets(cands, adj):
        m = chosen
        while m:
            low = m & -m
            layer[low.bit_length() - 1] = depth
            m ^= low
        yield from _layerings(adj, remaining & ~chosen, chosen, depth + 1, layer)


def _adj_masks(g: Graph) -> list[int]:
    masks = [0] * g.n_nodes
    for a, b in g.edges:
        masks[a] |= 1 << b
        masks[b] |= 1 << a
    return masks


def first_layers(g: Graph) -> list[int]:
    """All admissible source sets, the partition used for parallel scoring."""
    adj = _adj_masks(g)
    return list(_independent_subsets(list(range(g.n_nodes)), adj))


def _enumerate_layers(g: Graph, first: int | None = None) -> Iterator[list[int]]:
    adj = _adj_masks(g)
    full = (1 << g.n_nodes) - 1
    layer = [0] * g.n_nodes
    if first is None:
        yield from _layerings(adj, full, 0, 0, layer)
        return
    m = first
    while m:
        low = m & -m
        layer[low.bit_length() - 1] = 0
        m ^= low
    yield from _layerings(adj, full & ~first, first, 1, layer)


def _from_layer(g: Graph, layer: list[int]) -> Orientation:
    return Orientation(g, tuple((a, b) if layer[a] < layer[b] else (b, a) for a, b in g.edges))


def enumerate_acyclic_orientations(
    g: Graph, *, max_edges: int = MAX_EDGES, max_count: int = MAX_COUNT
) -> Iterator[Orientation]:
    """Yield each acyclic orientation of ``g`` exactly once.

    Raises :class:`InstanceTooLarge` up front when ``g`` has more than
    ``max_edges`` edges, and mid-stream once ``max_count`` would be exceeded.
    """
    _check_size(g, max_edges)
    count = 0
    for layer in _enumerate_layers(g):
        count += 1
        if count > max_count:
            raise InstanceTooLarge(f"instance too large: more than {max_count} acyclic orientations")
        yield _from_layer(g, layer)


def count_acyclic_orientations(g: Graph, *, max_edges: int = MAX_EDGES, max_count: int = MAX_COUNT) -> int:
    return sum(1 for _ in enumerate_acyclic_orientations(g, max_edges=max_edges, max_count=max_count))


def is_initial(o: Orientation, subset: Iterable[int]) -> bool:
    """True iff no arc points from the complement into ``subset``."""
    s = frozenset(subset)
    return all(o.in_neighbors[v] <= s for v in s)


def sink_count(v: int, o: Orientation, vf: Iterable[frozenset]) -> int:
    """Faces through ``v`` (as vertex-figure elements) built from incoming edges only."""
    incoming = o.in_edges(v)
    return sum(1 for s in vf if s <= incoming)


class _Scorer:
    """Per-vertex sink counts keyed by the in-neighbour bitmask, memoised."""

    def __init__(self, g: Graph, labels: VertexFigureLabels):
        self.n = g.n_nodes
        self.vf_masks: list[list[int]] = []
        for v in range(g.n_nodes):
            vf = vf_lattice_from_labels(labels.at(v))
            masks = []
            for element in vf:
                m = 0
                for e in element:
                    m |= 1 << (e[0] if e[1] == v else e[1])
                masks.append(m)
            self.vf_masks.append(masks)
        self.memo: list[dict[int, int]] = [{} for _ in range(g.n_nodes)]
        self.edges = g.edges

    def score_layer(self, layer: list[int]) -> tuple[int, list[int]]:
        inmask = [0] * self.n
        for a, b in self.edges:
            if layer[a] < layer[b]:
                inmask[b] |= 1 << a
            else:
                inmask[a] |= 1 << b
        per = []
        for v in range(self.n):
            m = inmask[v]
            memo = self.memo[v]
            c = memo.get(m)
            if c is None:
                c = sum(1 for s in self.vf_masks[v] if s & m == s)
                memo[m] = c
            per.append(c)
        return sum(per), per


def score(o: Orientation, labels: VertexFigureLabels) -> OrientationScore:
    per = tuple(sink_count(v, o, vf_lattice_from_labels(labels.at(v))) for v in range(o.graph.n_nodes))
    return OrientationScore(per, sum(per))


@dataclass(frozen=True)
class GoodOrientations:
    f: int
    good: tuple[Orientation, ...]
    n_acyclic: int


def _scan(g: Graph, labels: VertexFigureLabels, first: int | None, max_count: int) -> tuple[int | None, list[list[int]], int]:
    scorer = _Scorer(g, labels)
    best: int | None = None
    good: list[list[int]] = []
    count = 0
    for layer in _enumerate_layers(g, first):
        count += 1
        if count > max_count:
            raise InstanceTooLarge(f"instance too large: more than {max_count} acyclic orientations")
        total, _ = scorer.score_layer(layer)
        if best is None or total < best:
            best = total
            good = [list(layer)]
        elif total == best:
            good.append(list(layer))
    return best, good, count


def _scan_task(args):
    return _scan(*args)


def find_good_orientations(
    g: Graph,
    labels: VertexFigureLabels,
    *,
    max_edges: int = MAX_EDGES,
    max_count: int = MAX_COUNT,
    workers: int = 1,
) -> GoodOrientations:
    """Minimise the sink-count score over all acyclic orientations.

    With ``workers > 1`` the orientation space is split by source set and
    scanned in worker processes; the merge is order-preserving so the result
    is identical to the sequential scan.
    """
    _check_size(g, max_edges)
    if workers <= 1:
        best, layers, count = _scan(g, labels, None, max_count)
    else:
        tasks = [(g, labels, first, max_count) for first in first_layers(g)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_scan_task, tasks))
        count = sum(p[2] for p in parts)
        if count > max_count:
            raise InstanceTooLarge(f"instance too large: more than {max_count} acyclic orientations")
        best = min(p[0] for p in parts if p[0] is not None)
        layers = [layer for p in parts if p[0] == best for layer in p[1]]
    if best is None:
        raise ValidationError("graph has no nodes")
    return GoodOrientations(best, tuple(_from_layer(g, layer) for layer in layers), count)


def all_scores(g: Graph, labels: VertexFigureLabels, *, max_edges: int = MAX_EDGES, max_count: int = MAX_COUNT) -> list[int]:
    """Score of every acyclic orientation, in enumeration order."""
    _check_size(g, max_edges)
    scorer = _Scorer(g, labels)
    out = []
    for layer in _enumerate_layers(g):
        if len(out) >= max_count:
            raise InstanceTooLarge(f"instance too large: more than {max_count} acyclic orientations")
        out.append(scorer.score_layer(layer)[0])
    return out


def _face_graph_sinks_sources(o: Orientation, face: frozenset, face_edges) -> tuple[int, int]:
    has_out = set()
    has_in = set()
    for e in face_edges:
        a, b = face_key(e)
        if o.graph.has_edge(a, b):
            tail, head = (a, b) if b in o.out_neighbors[a] else (b, a)
            has_out.add(tail)
            has_in.add(head)
    sinks = sum(1 for v in face if v not in has_out)
    sources = sum(1 for v in face if v not in has_in)
    return sinks, sources


def _faces_with_edges(lat: FaceLattice):
    for f in lat.faces:
        if f:
            yield f, [e for e in lat.edges if e <= f]


def is_good_oracle(o: Orientation, lat: FaceLattice) -> bool:
    """Direct check that every non-empty face of ``lat`` has exactly one sink."""
    return all(_face_graph_sinks_sources(o, f, es)[0] == 1 for f, es in _faces_with_edges(lat))


def is_abstract_objective_function(o: Orientation, lat: FaceLattice) -> bool:
    """Good, and additionally one source on every non-empty face."""
    return all(_face_graph_sinks_sources(o, f, es) == (1, 1) for f, es in _faces_with_edges(lat))


def good_but_not_aof(lat: FaceLattice, g: Graph | None = None, *, max_edges: int = MAX_EDGES) -> list[Orientation]:
    """Good acyclic orientations of ``lat``'s graph that are not abstract
    objective functions. Empty for simple polytopes."""
    from polyrecon.graphs import graph_of

    g = g if g is not None else graph_of(lat)
    faces = list(_faces_with_edges(lat))
    out = []
    for o in enumerate_acyclic_orientations(g, max_edges=max_edges):
        counts = [_face_graph_sinks_sources(o, f, es) for f, es in faces]
        if all(s == 1 for s, _ in counts) and any(t != 1 for _, t in counts):
            out.append(o)
    return out
