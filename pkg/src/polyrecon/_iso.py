"""Backtracking isomorphism search for vertex-colored undirected graphs.

Both graph isomorphism and face-lattice isomorphism (via the Hasse diagram,
colored by rank) reduce to this routine.
"""

from __future__ import annotations

import heapq
from collections import Counter
from collections.abc import Hashable, Sequence


def _refine(
    adj_a: Sequence[Sequence[int]],
    adj_b: Sequence[Sequence[int]],
    colors_a: Sequence[Hashable],
    colors_b: Sequence[Hashable],
) -> tuple[list[int], list[int]] | None:
    """Joint colour refinement. Returns stable colourings, or None on mismatch."""
    palette = {c: i for i, c in enumerate(sorted(set(colors_a) | set(colors_b), key=repr))}
    ca = [palette[c] for c in colors_a]
    cb = [palette[c] for c in colors_b]
    n_classes = len(palette)
    while True:
        if Counter(ca) != Counter(cb):
            return None
        sig_a = [(ca[u], tuple(sorted(ca[w] for w in adj_a[u]))) for u in range(len(ca))]
        sig_b = [(cb[u], tuple(sorted(cb[w] for w in adj_b[u]))) for u in range(len(cb))]
        palette = {s: i for i, s in enumerate(sorted(set(sig_a) | set(sig_b)))}
        ca = [palette[s] for s in sig_a]
        cb = [palette[s] for s in sig_b]
        if len(palette) == n_classes:
            if Counter(ca) != Counter(cb):
                return None
            return ca, cb
        n_classes = len(palette)


def _search_order(adj: Sequence[Sequence[int]], colors: Sequence[int]) -> list[int]:
    # Most-constrained first: next node has the most already-ordered
    # neighbours, then the rarest colour.
    n = len(adj)
    freq = Counter(colors)
    conn = [0] * n
    placed = [False] * n
    heap = [(0, freq[colors[u]], u) for u in range(n)]
    heapq.heapify(heap)
    order: list[int] = []
    while heap:
        neg, _, u = heapq.heappop(heap)
        if placed[u] or -neg != conn[u]:
            continue
        placed[u] = True
        order.append(u)
        for w in adj[u]:
            if not placed[w]:
                conn[w] += 1
                heapq.heappush(heap, (-conn[w], freq[colors[w]], w))
    return order


def find_isomorphism(
    adj_a: Sequence[Sequence[int]],
    adj_b: Sequence[Sequence[int]],
    colors_a: Sequence[Hashable] | None = None,
    colors_b: Sequence[Hashable] | None = None,
) -> dict[int, int] | None:
    """Return a colour-preserving isomorphism a -> b as a dict, or None."""
    n = len(adj_a)
    if n != len(adj_b):
        return None
    if sum(len(x) for x in adj_a) != sum(len(x) for x in adj_b):
        return None
    if colors_a is None:
        colors_a = [0] * n
    if colors_b is None:
        colors_b = [0] * n
    refined = _refine(adj_a, adj_b, colors_a, colors_b)
    if refined is None:
        return None
    ca, cb = refined
    if n == 0:
        return {}

    set_b = [frozenset(x) for x in adj_b]
    by_color: dict[int, list[int]] = {}
    for v in range(n):
        by_color.setdefault(cb[v], []).append(v)

    order = _search_order(adj_a, ca)
    position = {u: i for i, u in enumerate(order)}
    # neighbours of u mapped before u, fixed per node
    earlier = [[w for w in adj_a[u] if position[w] < position[u]] for u in range(n)]

    image = [-1] * n
    used = [False] * n

    def candidates(u: int) -> list[int]:
        if earlier[u]:
            anchor = min((image[w] for w in earlier[u]), key=lambda x: len(adj_b[x]))
            return [c for c in sorted(adj_b[anchor]) if cb[c] == ca[u] and not used[c]]
        return [c for c in by_color[ca[u]] if not used[c]]

    def feasible(u: int, c: int) -> bool:
        if used[c] or cb[c] != ca[u]:
            return False
        nb = set_b[c]
        for w in earlier[u]:
            if image[w] not in nb:
                return False
        return sum(1 for y in adj_b[c] if used[y]) == len(earlier[u])

    stack: list[list[int]] = []
    pos = 0
    while 0 <= pos < n:
        u = order[pos]
        if pos == len(stack):
            stack.append(candidates(u))
        if image[u] != -1:
            used[image[u]] = False
            image[u] = -1
        pending = stack[pos]
        while pending:
            c = pending.pop(0)
            if feasible(u, c):
                image[u] = c
                used[c] = True
                pos += 1
                break
        else:
            stack.pop()
            pos -= 1
    if pos < 0:
        return None
    return {u: image[u] for u in range(n)}
