"""Pure-Python graph kernels; reference semantics for the compiled ones.

Every function takes a successor adjacency in CSR form (``indptr``,
``indices``; successors of ``v`` are ``indices[indptr[v]:indptr[v + 1]]``)
and an absolute monotonic ``deadline``.
"""
from __future__ import annotations

import time
from collections import deque

from .budget import NO_DEADLINE, MeasureTimeout

# BFS pops between deadline polls inside a single search
_POLL_MASK = 0xFFFF


def _poll(deadline: float) -> None:
    if deadline != NO_DEADLINE and time.monotonic() > deadline:
        raise MeasureTimeout()


def diameter(indptr, indices, deadline: float = NO_DEADLINE) -> int:
    """Largest finite BFS distance over all ordered (source, target) pairs."""
    n = len(indptr) - 1
    stamp = [-1] * n
    dist = [0] * n
    best = 0
    pops = 0
    for s in range(n):
        _poll(deadline)
        stamp[s] = s
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            pops += 1
            if not pops & _POLL_MASK:
                _poll(deadline)
            du = dist[u] + 1
            for i in range(indptr[u], indptr[u + 1]):
                w = indices[i]
                if stamp[w] != s:
                    stamp[w] = s
                    dist[w] = du
                    if du > best:
                        best = du
                    queue.append(w)
    return best


def girth(indptr, indices, deadline: float = NO_DEADLINE) -> int:
    """Length of the shortest directed cycle, or 0 if the graph is acyclic."""
    n = len(indptr) - 1
    for u in range(n):
        for i in range(indptr[u], indptr[u + 1]):
            if indices[i] == u:
                return 1
    stamp = [-1] * n
    dist = [0] * n
    best = 0  # 0 = no cycle found yet
    pops = 0
    for s in range(n):
        _poll(deadline)
        stamp[s] = s
        dist[s] = 0
        queue = deque([s])
        found = False
        while queue and not found:
            u = queue.popleft()
            pops += 1
            if not pops & _POLL_MASK:
                _poll(deadline)
            du = dist[u] + 1
            if best and du >= best:
                break
            for i in range(indptr[u], indptr[u + 1]):
                w = indices[i]
                if w == s:
                    best = du
                    found = True
                    break
                if stamp[w] != s:
                    stamp[w] = s
                    dist[w] = du
                    queue.append(w)
        if best == 2:
            break
    return best


def diamonds(indptr, indices, owners, deadline: float = NO_DEADLINE) -> tuple[int, int, int]:
    """Count diamonds ``(u, {v, v'}, w)`` as ``(total, even, odd)``.

    For fixed ``u`` and ``w`` with ``c`` distinct middle vertices the number
    of unordered middle pairs is ``c * (c - 1) / 2``.
    """
    n = len(indptr) - 1
    count_all = [0] * n
    count_own = [0] * n
    total = even = odd = 0
    for u in range(n):
        if not u & 0xFF:
            _poll(deadline)
        touched = []
        owner_u = owners[u]
        for i in range(indptr[u], indptr[u + 1]):
            v = indices[i]
            same = owners[v] == owner_u
            for j in range(indptr[v], indptr[v + 1]):
                w = indices[j]
                if count_all[w] == 0:
                    touched.append(w)
                count_all[w] += 1
                if same:
                    count_own[w] += 1
        for w in touched:
            c = count_all[w]
            total += c * (c - 1) // 2
            c = count_own[w]
            if c > 1:
                if owner_u == 0:
                    even += c * (c - 1) // 2
                else:
                    odd += c * (c - 1) // 2
            count_all[w] = 0
            count_own[w] = 0
    return total, even, odd


def neighbourhoods(indptr, indices, k: int, deadline: float = NO_DEADLINE) -> tuple[list, list]:
    """Per vertex: ``|N_k(v)|`` and the number of edges induced by ``N_k(v)``.

    ``N_k(v)`` holds the vertices other than ``v`` at distance at most ``k``.
    """
    n = len(indptr) - 1
    stamp = [-1] * n
    dist = [0] * n
    sizes = [0] * n
    edge_counts = [0] * n
    for s in range(n):
        if not s & 0xFF:
            _poll(deadline)
        stamp[s] = s
        dist[s] = 0
        members = []
        queue = deque([s])
        while queue:
            u = queue.popleft()
            du = dist[u]
            if du == k:
                continue
            for i in range(indptr[u], indptr[u + 1]):
                w = indices[i]
                if stamp[w] != s:
                    stamp[w] = s
                    dist[w] = du + 1
                    members.append(w)
                    queue.append(w)
        m = 0
        for x in members:
            for i in range(indptr[x], indptr[x + 1]):
                y = indices[i]
                if stamp[y] == s and y != s:
                    m += 1
        sizes[s] = len(members)
        edge_counts[s] = m
    return sizes, edge_counts
