"""Structural measures of parity games (everything except widths and alternation depth)."""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .budget import NO_DEADLINE
from .core import ParityGame
from .kernels import Backend, get_backend


@dataclass
class SizeSummary:
    num_vertices: int
    num_even_vertices: int
    num_odd_vertices: int
    num_edges: int
    num_priorities: int
    count_per_priority: dict[int, int]
    is_solitaire: bool


@dataclass
class MinMaxAvg:
    min: float
    max: float
    avg: float


@dataclass
class DegreeSummary:
    in_degree: MinMaxAvg
    out_degree: MinMaxAvg
    degree: MinMaxAvg


@dataclass
class SccDecomposition:
    """Components are numbered in reverse topological order: every quotient
    edge ``(c, d)`` has ``c > d``."""

    component_of: list[int]
    components: list[list[int]]
    quotient_edges: list[tuple[int, int]]
    trivial: list[bool]
    terminal: list[bool]

    def __len__(self) -> int:
        return len(self.components)


@dataclass
class SccMetrics:
    num_sccs: int
    num_trivial: int
    num_nontrivial: int
    num_terminal: int
    quotient_height: int


@dataclass
class BfsMetrics:
    root: int
    height: int
    vertices_per_level: list[int]
    max_queue_size: int
    back_level_edge_count: int
    max_back_level_edge_length: int
    same_level_edge_count: int
    unreachable_count: int


@dataclass
class DfsMetrics:
    root: int
    max_stack_size: int
    tree_edges: int
    back_edges: int
    forward_or_cross_edges: int
    visited_count: int


@dataclass
class DiamondCounts:
    total: int
    even: int
    odd: int


@dataclass
class NeighbourhoodSummary:
    k: int
    size: MinMaxAvg
    clustering: MinMaxAvg
    sizes: list[int] = field(default_factory=list, repr=False)
    coefficients: list[float] = field(default_factory=list, repr=False)


def _mma(values: Sequence[float]) -> MinMaxAvg:
    if not values:
        return MinMaxAvg(0, 0, 0.0)
    return MinMaxAvg(min(values), max(values), sum(values) / len(values))


def size_summary(game: ParityGame) -> SizeSummary:
    n = game.num_vertices
    odd = sum(game.owners)
    per_prio = dict(sorted(Counter(game.priorities).items()))
    return SizeSummary(
        num_vertices=n,
        num_even_vertices=n - odd,
        num_odd_vertices=odd,
        num_edges=game.num_edges,
        num_priorities=len(per_prio),
        count_per_priority=per_prio,
        is_solitaire=odd == 0 or odd == n,
    )


def degree_summary(game: ParityGame) -> DegreeSummary:
    n = game.num_vertices
    out_deg = [len(s) for s in game.successors]
    in_deg = [0] * n
    for succ in game.successors:
        for w in succ:
            in_deg[w] += 1
    pred = game.predecessors()
    deg = [len(set(game.successors[v]).union(pred[v])) for v in range(n)]
    return DegreeSummary(_mma(in_deg), _mma(out_deg), _mma(deg))


def tarjan_sccs(successors: Sequence[Sequence[int]], active: Optional[Sequence[bool]] = None) -> list[list[int]]:
    """Strongly connected components in reverse topological order (sinks first).

    Iterative Tarjan. With ``active`` given, only vertices ``v`` with
    ``active[v]`` true, and edges between them, are considered.
    """
    n = len(successors)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    result: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1 or (active is not None and not active[root]):
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        work = [(root, iter(successors[root]))]
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if active is not None and not active[w]:
                    continue
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(successors[w])))
                    advanced = True
                    break
                if on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if low[v] < low[parent]:
                    low[parent] = low[v]
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comp.sort()
                result.append(comp)
    return result


def scc_decompose(game: ParityGame) -> SccDecomposition:
    comps = tarjan_sccs(game.successors)
    component_of = [0] * game.num_vertices
    for c, members in enumerate(comps):
        for v in members:
            component_of[v] = c
    quotient = set()
    self_edge = [False] * len(comps)
    for u, succ in enumerate(game.successors):
        cu = component_of[u]
        for w in succ:
            cw = component_of[w]
            if cu != cw:
                quotient.add((cu, cw))
            elif u == w:
                self_edge[cu] = True
    has_out = [False] * len(comps)
    for cu, _ in quotient:
        has_out[cu] = True
    trivial = [len(members) == 1 and not self_edge[c] for c, members in enumerate(comps)]
    return SccDecomposition(
        component_of=component_of,
        components=comps,
        quotient_edges=sorted(quotient),
        trivial=trivial,
        terminal=[not h for h in has_out],
    )


def scc_metrics(decomp: SccDecomposition) -> SccMetrics:
    k = len(decomp.components)
    out: list[list[int]] = [[] for _ in range(k)]
    for c, d in decomp.quotient_edges:
        out[c].append(d)
    # edges go from higher to lower component ids
    height = [0] * k
    for c in range(k):
        for d in out[c]:
            if height[d] + 1 > height[c]:
                height[c] = height[d] + 1
    num_trivial = sum(decomp.trivial)
    return SccMetrics(
        num_sccs=k,
        num_trivial=num_trivial,
        num_nontrivial=k - num_trivial,
        num_terminal=sum(decomp.terminal),
        quotient_height=max(height, default=0),
    )


def _root(game: ParityGame, root: Optional[int]) -> int:
    if root is None:
        root = game.initial_vertex if game.initial_vertex is not None else 0
    if not 0 <= root < game.num_vertices:
        raise ValueError(f"root {root} is not a vertex")
    return root


def bfs_metrics(game: ParityGame, root: Optional[int] = None) -> BfsMetrics:
    """BFS levels from ``root`` (default: the initial vertex).

    The queue length is sampled just before each dequeue, so it includes the
    vertex about to be expanded.
    """
    root = _root(game, root)
    level = [-1] * game.num_vertices
    level[root] = 0
    queue = deque([root])
    per_level = [0]
    max_queue = 0
    back = same = 0
    max_back = 0
    while queue:
        if len(queue) > max_queue:
            max_queue = len(queue)
        u = queue.popleft()
        lu = level[u]
        per_level[lu] += 1
        for w in game.successors[u]:
            lw = level[w]
            if lw == -1:
                level[w] = lu + 1
                if lu + 1 == len(per_level):
                    per_level.append(0)
                queue.append(w)
            elif lw < lu:
                back += 1
                if lu - lw > max_back:
                    max_back = lu - lw
            elif lw == lu:
                same += 1
    reached = sum(per_level)
    return BfsMetrics(
        root=root,
        height=len(per_level) - 1,
        vertices_per_level=per_level,
        max_queue_size=max_queue,
        back_level_edge_count=back,
        max_back_level_edge_length=max_back,
        same_level_edge_count=same,
        unreachable_count=game.num_vertices - reached,
    )


def dfs_metrics(game: ParityGame, root: Optional[int] = None) -> DfsMetrics:
    """Iterative DFS from ``root`` visiting successors in ascending id order.

    The stack holds the current DFS path; its size is sampled after each push.
    """
    root = _root(game, root)
    WHITE, GREY, BLACK = 0, 1, 2
    colour = [WHITE] * game.num_vertices
    colour[root] = GREY
    stack = [(root, iter(sorted(game.successors[root])))]
    max_stack = 1
    tree = back = other = 0
    visited = 1
    while stack:
        v, it = stack[-1]
        for w in it:
            c = colour[w]
            if c == WHITE:
                tree += 1
                colour[w] = GREY
                visited += 1
                stack.append((w, iter(sorted(game.successors[w]))))
                if len(stack) > max_stack:
                    max_stack = len(stack)
                break
            if c == GREY:
                back += 1
            else:
                other += 1
        else:
            colour[v] = BLACK
            stack.pop()
    return DfsMetrics(root, max_stack, tree, back, other, visited)


def _backend(backend) -> Backend:
    return backend if isinstance(backend, Backend) else get_backend(backend)


def diameter(game: ParityGame, deadline: float = NO_DEADLINE, backend=None) -> int:
    """Maximum over reachable ordered pairs of the shortest-path length."""
    return _backend(backend).diameter(game, deadline)


def girth(game: ParityGame, deadline: float = NO_DEADLINE, backend=None) -> int:
    """Length of the shortest cycle. Always finite for a total game."""
    g = _backend(backend).girth(game, deadline)
    if g == 0:
        raise ValueError("graph is acyclic; the game is not total")
    return g


def count_diamonds(game: ParityGame, deadline: float = NO_DEADLINE, backend=None) -> DiamondCounts:
    return DiamondCounts(*_backend(backend).diamonds(game, deadline))


def neighbourhood_summary(
    game: ParityGame, k: int, deadline: float = NO_DEADLINE, backend=None
) -> NeighbourhoodSummary:
    """Sizes of ``k``-neighbourhoods and their clustering coefficients.

    The clustering coefficient of ``v`` is the number of edges of the subgraph
    induced by ``N_k(v)`` divided by ``|N_k(v)|`` (0 for an empty set).
    """
    if k < 1:
        raise ValueError("k must be positive")
    sizes, edges = _backend(backend).neighbourhoods(game, k, deadline)
    coeff = [e / s if s else 0.0 for s, e in zip(sizes, edges)]
    return NeighbourhoodSummary(k, _mma(sizes), _mma(coeff), sizes, coeff)
