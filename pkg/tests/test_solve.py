import pytest

from conftest import cycle_game, random_game
from oracles import solve_oracle
from paritybench.budget import MeasureTimeout
from paritybench.core import ParityGame, Player
from paritybench.gen import gen_recursive_ladder
from paritybench.solve import SolverBudgetExceeded, attractor, solve_zielonka


def test_attractor_examples():
    g = ParityGame([0, 1], [0, 0], [[1], [0]])
    assert attractor(g, Player.EVEN, set(range(2))) == {0, 1}
    assert attractor(g, Player.EVEN, set()) == set()
    assert attractor(g, Player.EVEN, {1}) == {0, 1}


def test_attractor_opponent_needs_all_successors():
    # v0 (Odd) -> {1, 2}; only v1 is in the target
    g = ParityGame([1, 0, 0], [0] * 3, [[1, 2], [1], [2]])
    assert attractor(g, Player.EVEN, {1}) == {1}
    assert attractor(g, Player.ODD, {1}) == {0, 1}


def test_attractor_respects_subgame():
    g = ParityGame([1, 0, 0], [0] * 3, [[1, 2], [1], [2]])
    assert attractor(g, Player.EVEN, {1}, subgame={0, 1}) == {0, 1}


def test_solve_examples():
    assert solve_zielonka(ParityGame([0], [0], [[0]])).won_even == frozenset({0})
    assert solve_zielonka(ParityGame([0], [1], [[0]])).won_odd == frozenset({0})
    for owners in ([0, 0], [0, 1], [1, 0], [1, 1]):
        part = solve_zielonka(ParityGame(owners, [1, 2], [[1], [0]]))
        assert part.won_even == frozenset({0, 1})


def test_partition_covers_vertices(rng):
    for _ in range(100):
        g = random_game(rng, rng.randint(1, 40))
        part = solve_zielonka(g)
        assert not part.won_even & part.won_odd
        assert part.won_even | part.won_odd == frozenset(range(g.num_vertices))


def test_matches_strategy_enumeration(rng):
    for _ in range(300):
        g = random_game(rng, rng.randint(1, 8), max_out=3, max_prio=4)
        part = solve_zielonka(g)
        assert (part.won_even, part.won_odd) == solve_oracle(g)


def test_shift_by_two_is_invariant(rng):
    for _ in range(100):
        g = random_game(rng, rng.randint(1, 40))
        assert solve_zielonka(g.with_priorities([p + 2 for p in g.priorities])) == solve_zielonka(g)


def test_dual_swaps_partition(rng):
    for _ in range(100):
        g = random_game(rng, rng.randint(1, 40))
        dual = g.with_owners([1 - o for o in g.owners]).with_priorities([p + 1 for p in g.priorities])
        a, b = solve_zielonka(g), solve_zielonka(dual)
        assert (a.won_even, a.won_odd) == (b.won_odd, b.won_even)


def test_deep_inputs_do_not_overflow_the_stack():
    g = gen_recursive_ladder(400)
    part = solve_zielonka(g)
    assert len(part.won_even) + len(part.won_odd) == g.num_vertices


def test_depth_budget_is_reported():
    with pytest.raises(SolverBudgetExceeded):
        solve_zielonka(gen_recursive_ladder(20), max_depth=3)


def test_expired_deadline():
    with pytest.raises(MeasureTimeout):
        solve_zielonka(cycle_game(500, list(range(500))), 0.0)
