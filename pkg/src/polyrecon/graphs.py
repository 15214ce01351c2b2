"""Vertex-edge graphs and dual graphs of face lattices, plus the structural
predicates the reconstruction pipelines rely on."""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass, field
from functools import cached_property

from polyrecon import _iso
from polyrecon.exceptions import ValidationError
from polyrecon.lattice import FaceLattice, face_key

Edge = tuple[int, int]


def edge(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on nodes ``0..n_nodes-1``."""

    n_nodes: int
    edges: tuple[Edge, ...]
    node_names: dict[int, str] | None = field(default=None, compare=False)

    def __post_init__(self):
        normalized = set()
        for a, b in self.edges:
            if a == b:
                raise ValidationError(f"loop at node {a}")
            if not (0 <= a < self.n_nodes and 0 <= b < self.n_nodes):
                raise ValidationError(f"edge ({a}, {b}) has a node outside 0..{self.n_nodes - 1}")
            e = edge(a, b)
            if e in normalized:
                raise ValidationError(f"parallel edge {e}")
            normalized.add(e)
        object.__setattr__(self, "edges", tuple(sorted(normalized)))

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj: list[set[int]] = [set() for _ in range(self.n_nodes)]
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return tuple(frozenset(s) for s in adj)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def incident_edges(self, v: int) -> tuple[Edge, ...]:
        return tuple(edge(v, w) for w in sorted(self.adjacency[v]))

    def has_edge(self, a: int, b: int) -> bool:
        return edge(a, b) in self.edge_set

    def is_connected(self) -> bool:
        return self.n_nodes == 0 or len(_component(self, 0)) == self.n_nodes


def _component(g: Graph, root: int, within: frozenset[int] | None = None) -> set[int]:
    seen = {root}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if w not in seen and (within is None or w in within):
                seen.add(w)
                queue.append(w)
    return seen


@dataclass(frozen=True)
class InducedSubgraph:
    parent: Graph
    nodes: frozenset[int]

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(e for e in self.parent.edges if e[0] in self.nodes and e[1] in self.nodes)

    def edges_at(self, v: int) -> frozenset[Edge]:
        """Edges of the subgraph through ``v`` (written Phi(v) in the F-subgraph test)."""
        return frozenset(edge(v, w) for w in self.parent.adjacency[v] if w in self.nodes)

    def is_connected(self) -> bool:
        if not self.nodes:
            return True
        root = min(self.nodes)
        return _component(self.parent, root, self.nodes) == set(self.nodes)

    def as_graph(self) -> tuple[Graph, tuple[int, ...]]:
        """Relabel to ``0..k-1``; returns the graph and the sorted original ids."""
        ids = tuple(sorted(self.nodes))
        pos = {v: i for i, v in enumerate(ids)}
        return Graph(len(ids), tuple((pos[a], pos[b]) for a, b in self.edges)), ids


def graph_of(lat: FaceLattice) -> Graph:
    """Vertex-edge graph: rank-0 faces as nodes, rank-1 faces as edges."""
    edges = []
    for f in lat.edges:
        if len(f) != 2:
            raise ValidationError(f"rank-1 face {face_key(f)} has {len(f)} vertices; lattice is not polytopal")
        a, b = face_key(f)
        edges.append((a, b))
    n = max(lat.vertices) + 1 if lat.vertices else 0
    return Graph(n, tuple(edges))


def dual_graph(lat: FaceLattice) -> Graph:
    """Facets as nodes (lexicographic order), ridges as edges."""
    if lat.dimension < 2:
        raise ValidationError("dual graph needs dimension >= 2")
    facets = lat.facets
    ridges = set(lat.ridges)
    containing: dict[frozenset, list[int]] = {r: [] for r in ridges}
    for i, f in enumerate(facets):
        for r in lat.lower_covers(f):
            if r in containing:
                containing[r].append(i)
    edges = []
    for r in sorted(ridges, key=face_key):
        owners = containing[r]
        if len(owners) != 2:
            raise ValidationError(f"ridge {face_key(r)} lies in {len(owners)} facets, expected 2")
        edges.append((owners[0], owners[1]))
    names = {i: "{" + ",".join(map(str, face_key(f))) + "}" for i, f in enumerate(facets)}
    return Graph(len(facets), tuple(edges), names)


def induced(g: Graph, subset: Iterable[int]) -> InducedSubgraph:
    nodes = frozenset(subset)
    outside = [v for v in nodes if not 0 <= v < g.n_nodes]
    if outside:
        raise ValidationError(f"nodes {sorted(outside)} are not in the graph")
    return InducedSubgraph(g, nodes)


def find_odd_cycle(g: Graph) -> list[int] | None:
    """A closed walk of odd length witnessing non-bipartiteness, or None."""
    color = [-1] * g.n_nodes
    parent = [-1] * g.n_nodes
    for root in range(g.n_nodes):
        if color[root] != -1:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in sorted(g.adjacency[u]):
                if color[w] == -1:
                    color[w] = 1 - color[u]
                    parent[w] = u
                    queue.append(w)
                elif color[w] == color[u]:
                    return _cycle_through(parent, u, w)
    return None


def _cycle_through(parent: list[int], u: int, w: int) -> list[int]:
    def path_to_root(x):
        out = [x]
        while parent[x] != -1:
            x = parent[x]
            out.append(x)
        return out

    pu, pw = path_to_root(u), path_to_root(w)
    on_pw = set(pw)
    lca = next(x for x in pu if x in on_pw)
    left = pu[: pu.index(lca) + 1]
    right = pw[: pw.index(lca)]
    return left + right[::-1]


def is_bipartite(g: Graph) -> bool:
    return find_odd_cycle(g) is None


def find_triangle(g: Graph) -> tuple[int, int, int] | None:
    for a, b in g.edges:
        common = g.adjacency[a] & g.adjacency[b]
        if common:
            return tuple(sorted((a, b, min(common))))
    return None


def is_k_regular(g: Graph, k: int) -> bool:
    return all(len(nb) == k for nb in g.adjacency)


def regular_degree(g: Graph) -> int | None:
    """Common degree of a regular graph, None if not regular or empty."""
    degrees = {len(nb) for nb in g.adjacency}
    return degrees.pop() if len(degrees) == 1 else None


def is_complete_minus_perfect_matching(g: Graph | InducedSubgraph) -> list[Edge] | None:
    """Return the missing perfect matching if ``g`` is K_2m minus one, else None.

    Two isolated nodes count as K_2 minus its single edge.
    """
    if isinstance(g, InducedSubgraph):
        nodes = sorted(g.nodes)
        adj = {v: {w for w in g.parent.adjacency[v] if w in g.nodes} for v in nodes}
    else:
        nodes = list(range(g.n_nodes))
        adj = {v: set(g.adjacency[v]) for v in nodes}
    n = len(nodes)
    if n == 0 or n % 2:
        return None
    node_set = set(nodes)
    matching = []
    for v in nodes:
        missing = node_set - adj[v] - {v}
        if len(missing) != 1:
            return None
        (w,) = missing
        if v < w:
            matching.append((v, w))
    return matching


def find_graph_isomorphism(a: Graph, b: Graph) -> dict[int, int] | None:
    adj_a = [sorted(x) for x in a.adjacency]
    adj_b = [sorted(x) for x in b.adjacency]
    return _iso.find_isomorphism(adj_a, adj_b, [len(x) for x in adj_a], [len(x) for x in adj_b])


def graph_isomorphic(a: Graph, b: Graph) -> bool:
    return find_graph_isomorphism(a, b) is not None


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))


def cycle_graph(n: int) -> Graph:
    return Graph(n, tuple(edge(i, (i + 1) % n) for i in range(n)))
