"""Zielonka's recursive algorithm (max-parity), run on an explicit stack.

Used as a correctness oracle, not as a fast solver.
"""
from __future__ import annotations

from typing import Iterable, Optional

from .budget import NO_DEADLINE, check
from .core import ParityGame, Player, WinningPartition


class SolverBudgetExceeded(RuntimeError):
    """Recursion depth limit reached."""


def attractor(
    game: ParityGame,
    player: int,
    target: Iterable[int],
    subgame: Optional[set] = None,
) -> set:
    """Vertices of ``subgame`` (default: all) from which ``player`` can force a visit to ``target``."""
    owners = game.owners
    pred = game.predecessors()
    succ = game.successors
    if subgame is None:
        attr = set(target)
    else:
        attr = {v for v in target if v in subgame}
    remaining: dict[int, int] = {}
    todo = list(attr)
    while todo:
        w = todo.pop()
        for v in pred[w]:
            if v in attr or (subgame is not None and v not in subgame):
                continue
            if owners[v] == player:
                attr.add(v)
                todo.append(v)
                continue
            left = remaining.get(v)
            if left is None:
                if subgame is None:
                    left = len(succ[v])
                else:
                    left = sum(1 for x in succ[v] if x in subgame)
            left -= 1
            remaining[v] = left
            if left == 0:
                attr.add(v)
                todo.append(v)
    return attr


class _Frame:
    __slots__ = ("sub", "stage", "alpha", "removed")

    def __init__(self, sub: set):
        self.sub = sub
        self.stage = 0
        self.alpha = 0
        self.removed: set = set()


def solve_zielonka(
    game: ParityGame,
    deadline: float = NO_DEADLINE,
    max_depth: Optional[int] = None,
) -> WinningPartition:
    prio = game.priorities
    stack = [_Frame(set(game.vertices()))]
    ret: tuple[set, set] = (set(), set())
    while stack:
        check(deadline)
        f = stack[-1]
        if f.stage == 0:
            if not f.sub:
                ret = (set(), set())
                stack.pop()
                continue
            top = max(prio[v] for v in f.sub)
            f.alpha = top & 1
            f.removed = attractor(game, f.alpha, [v for v in f.sub if prio[v] == top], f.sub)
            f.stage = 1
            if max_depth is not None and len(stack) >= max_depth:
                raise SolverBudgetExceeded(f"recursion depth {max_depth} exceeded")
            stack.append(_Frame(f.sub - f.removed))
            continue
        alpha, beta = f.alpha, 1 - f.alpha
        if f.stage == 1:
            won = ret
            if not won[beta]:
                result = [set(), set()]
                result[alpha] = f.sub
                ret = (result[0], result[1])
                stack.pop()
                continue
            f.removed = attractor(game, beta, won[beta], f.sub)
            f.stage = 2
            if max_depth is not None and len(stack) >= max_depth:
                raise SolverBudgetExceeded(f"recursion depth {max_depth} exceeded")
            stack.append(_Frame(f.sub - f.removed))
            continue
        won = ret
        result = [set(), set()]
        result[alpha] = won[alpha]
        result[beta] = won[beta] | f.removed
        ret = (result[0], result[1])
        stack.pop()
    return WinningPartition(frozenset(ret[Player.EVEN]), frozenset(ret[Player.ODD]))
