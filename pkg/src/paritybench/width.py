"""Heuristic bounds on treewidth and Kelly-width.

All three heuristics break ties by lowest vertex id, so results are a
function of the labelled graph. Self-loops are ignored throughout.
"""
from __future__ import annotations

import heapq
from typing import Iterable

from .budget import NO_DEADLINE, check
from .core import ParityGame


class UndirectedView:
    """Symmetric, loop-free adjacency obtained by forgetting edge directions."""

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        self.adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u != v:
                self.adj[u].add(v)
                self.adj[v].add(u)

    @classmethod
    def from_game(cls, game: ParityGame) -> "UndirectedView":
        return cls(game.num_vertices, game.edges())

    def __len__(self) -> int:
        return len(self.adj)

    def copy_adjacency(self) -> list[set[int]]:
        return [set(s) for s in self.adj]


def _view(graph) -> UndirectedView:
    return graph if isinstance(graph, UndirectedView) else UndirectedView.from_game(graph)


def treewidth_upper_greedy_degree(graph, deadline: float = NO_DEADLINE) -> int:
    """Greedy-degree elimination: an upper bound on treewidth.

    Repeatedly eliminates a vertex of minimum degree, making its neighbours a
    clique; returns the largest degree seen at elimination.
    """
    adj = _view(graph).copy_adjacency()
    heap = [(len(a), v) for v, a in enumerate(adj)]
    heapq.heapify(heap)
    removed = [False] * len(adj)
    width = 0
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != len(adj[v]):
            continue
        check(deadline)
        removed[v] = True
        width = max(width, d)
        nbrs = adj[v]
        for u in nbrs:
            adj[u].discard(v)
            adj[u].update(w for w in nbrs if w != u)
        for u in nbrs:
            heapq.heappush(heap, (len(adj[u]), u))
        adj[v] = set()
    return width


def treewidth_lower_mmw(graph, deadline: float = NO_DEADLINE) -> int:
    """Minor-min-width: a lower bound on treewidth.

    Repeatedly takes a minimum-degree vertex ``v``, records its degree, and
    contracts it into its minimum-degree neighbour (deleting it when isolated).
    """
    adj = _view(graph).copy_adjacency()
    heap = [(len(a), v) for v, a in enumerate(adj)]
    heapq.heapify(heap)
    removed = [False] * len(adj)
    bound = 0
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != len(adj[v]):
            continue
        check(deadline)
        bound = max(bound, d)
        removed[v] = True
        nbrs = adj[v]
        if not nbrs:
            continue
        u = min(nbrs, key=lambda w: (len(adj[w]), w))
        for w in nbrs:
            adj[w].discard(v)
            if w != u:
                adj[w].add(u)
                adj[u].add(w)
        adj[v] = set()
        heapq.heappush(heap, (len(adj[u]), u))
        for w in nbrs:
            if w != u:
                heapq.heappush(heap, (len(adj[w]), w))
    return bound


def kellywidth_upper(game: ParityGame, deadline: float = NO_DEADLINE) -> int:
    """Directed elimination ordering: an upper bound on Kelly-width.

    Eliminates a vertex of minimum current out-degree, adding ``u -> w`` for
    every in-neighbour ``u`` and out-neighbour ``w`` (``u != w``). The result
    is one more than the largest out-degree at elimination time.
    """
    n = game.num_vertices
    out: list[set[int]] = [set() for _ in range(n)]
    inn: list[set[int]] = [set() for _ in range(n)]
    for u, v in game.edges():
        if u != v:
            out[u].add(v)
            inn[v].add(u)
    heap = [(len(o), v) for v, o in enumerate(out)]
    heapq.heapify(heap)
    removed = [False] * n
    width = 0
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != len(out[v]):
            continue
        check(deadline)
        removed[v] = True
        width = max(width, d)
        touched = set()
        for u in inn[v]:
            out[u].discard(v)
            for w in out[v]:
                if w != u and w not in out[u]:
                    out[u].add(w)
                    inn[w].add(u)
            touched.add(u)
        for w in out[v]:
            inn[w].discard(v)
        out[v] = set()
        inn[v] = set()
        for u in touched:
            heapq.heappush(heap, (len(out[u]), u))
    return width + 1 if n else 0
