"""Nesting depth per SCC and alternation depth of a parity game.

Within an SCC ``C`` let ``R_p(v)`` be the vertices that reach ``v`` along
edges of ``C`` whose endpoints all have priority at most ``p = prio(v)``.
The nesting depth is the least solution of

    nd(v) = max(1,
                nd(u)     for u in R_p(v), u != v, prio(u) = p (mod 2),
                nd(u) + 1 for u in R_p(v),          prio(u) != p (mod 2))

A vertex of equal priority contributes nothing beyond what already reaches
it (reachability under one bound is transitive), so only vertices of
strictly lower priority matter:

    nd(v) = max(1, max{nd(u) + [prio(u) odd-vs-even differs from p]
                       : u in R_p(v), prio(u) < p})

That is evaluated one priority level at a time: condense the subgraph of
vertices with priority <= p into its SCCs and push the best contribution
along the condensation in topological order.
"""
from __future__ import annotations

from typing import Iterable, Optional

from .budget import NO_DEADLINE, check
from .core import ParityGame
from .stats import scc_decompose, tarjan_sccs


def _is_strongly_connected(game: ParityGame, members: list[int]) -> bool:
    inside = set(members)
    for direction in (game.successors, game.predecessors()):
        seen = {members[0]}
        todo = [members[0]]
        while todo:
            u = todo.pop()
            for w in direction[u]:
                if w in inside and w not in seen:
                    seen.add(w)
                    todo.append(w)
        if len(seen) != len(inside):
            return False
    return True


def nesting_depths(
    game: ParityGame,
    component: Iterable[int],
    deadline: float = NO_DEADLINE,
    *,
    check_connected: bool = True,
) -> dict[int, int]:
    """Nesting depth of every vertex of ``component`` (one SCC of ``game``)."""
    members = sorted(set(component))
    if not members:
        raise ValueError("empty component")
    if check_connected and not _is_strongly_connected(game, members):
        raise ValueError("component is not strongly connected")

    prio = game.priorities
    local = {v: i for i, v in enumerate(members)}
    succ_local = [[local[w] for w in game.successors[v] if w in local] for v in members]
    lp = [prio[v] for v in members]
    size = len(members)

    nd = [0] * size
    levels = sorted(set(lp))
    if len(levels) == 1 or len({p & 1 for p in levels}) == 1:
        # a single parity never triggers the alternation clause
        return {v: 1 for v in members}

    active = [False] * size
    for p in levels:
        check(deadline)
        for i in range(size):
            if lp[i] <= p:
                active[i] = True
        # contribution of a lower-priority vertex to a priority-p target
        contrib = [0] * size
        for i in range(size):
            if active[i] and lp[i] < p:
                contrib[i] = nd[i] + ((lp[i] ^ p) & 1)
        sccs = tarjan_sccs(succ_local, active)
        # tarjan_sccs yields sinks first; walk sources first
        best = [0] * size
        for comp in reversed(sccs):
            value = 0
            for i in comp:
                if contrib[i] > value:
                    value = contrib[i]
                if best[i] > value:
                    value = best[i]
            for i in comp:
                best[i] = value
            for i in comp:
                for j in succ_local[i]:
                    if active[j] and best[j] < value:
                        best[j] = value
        for i in range(size):
            if lp[i] == p:
                nd[i] = max(1, best[i])
    return {v: nd[i] for i, v in enumerate(members)}


def component_nesting_depths(game: ParityGame, deadline: float = NO_DEADLINE) -> list[int]:
    """``nd(C)`` for every SCC, indexed like :func:`~paritybench.stats.scc_decompose`."""
    decomp = scc_decompose(game)
    out = []
    for comp in decomp.components:
        depths = nesting_depths(game, comp, deadline, check_connected=False)
        out.append(max(depths.values()))
    return out


def alternation_depth(game: ParityGame, deadline: float = NO_DEADLINE) -> int:
    """Maximum nesting depth over all SCCs; at least 1 for a non-empty game."""
    return max(component_nesting_depths(game, deadline), default=1)


def vertex_nesting_depths(game: ParityGame, deadline: float = NO_DEADLINE) -> list[Optional[int]]:
    """Nesting depth of every vertex within its own SCC."""
    out: list[Optional[int]] = [None] * game.num_vertices
    for comp in scc_decompose(game).components:
        for v, d in nesting_depths(game, comp, deadline, check_connected=False).items():
            out[v] = d
    return out
