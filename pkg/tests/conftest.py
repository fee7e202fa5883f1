import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from paritybench.core import ParityGame
from paritybench.kernels import BACKENDS


def random_game(rng: random.Random, n: int, max_out: int = 3, max_prio: int = 5,
                self_loop_rate: float | None = None) -> ParityGame:
    """Random total game; ``self_loop_rate`` controls self-loops explicitly when given."""
    succs = []
    for v in range(n):
        k = rng.randint(1, min(max_out, n))
        pool = list(range(n))
        if self_loop_rate is not None:
            pool.remove(v)
            if n == 1 or rng.random() < self_loop_rate:
                succ = {v}
                k -= 1
            else:
                succ = set()
            k = min(k, len(pool))
            if not succ and k == 0:
                k = 1
            succ.update(rng.sample(pool, k))
        else:
            succ = set(rng.sample(pool, k))
        succs.append(sorted(succ))
    owners = [rng.randint(0, 1) for _ in range(n)]
    prios = [rng.randint(0, max_prio) for _ in range(n)]
    return ParityGame(owners, prios, succs).check()


def cycle_game(n: int, prios=None) -> ParityGame:
    return ParityGame([0] * n, prios or [0] * n, [[(i + 1) % n] for i in range(n)])


def path_game(n: int) -> ParityGame:
    """v0 -> v1 -> ... -> v(n-1) with a self-loop on the last vertex."""
    return ParityGame([0] * n, [0] * n, [[i + 1] for i in range(n - 1)] + [[n - 1]])


@pytest.fixture(params=sorted(BACKENDS))
def backend(request):
    return BACKENDS[request.param]


@pytest.fixture
def rng():
    return random.Random(20240601)


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(acceptance.RESULTS):
        terminalreporter.write_line(acceptance.RESULTS[key])
