"""Deterministic generators for random games and synthetic hard families.

Random games draw from numpy's PCG64 bit generator (seeded through
``numpy.random.SeedSequence``), whose raw 64-bit output stream is stable
across platforms and numpy releases. Bounded integers are derived from raw
words by rejection sampling, so nothing depends on numpy's higher-level
distribution code. The exact wiring of each family is documented in
``docs/generators.md``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core import ParityGame

EVEN, ODD = 0, 1

_U64 = 1 << 64


class ParameterError(ValueError):
    pass


class Pcg64Stream:
    """Unbiased bounded integers on top of the PCG64 raw output stream."""

    _BLOCK = 1024

    def __init__(self, seed: int):
        if not 0 <= seed < _U64:
            raise ParameterError(f"seed must be in [0, 2^64), got {seed}")
        self._bits = np.random.PCG64(seed)
        self._buf: list[int] = []
        self._pos = 0

    def next_u64(self) -> int:
        if self._pos == len(self._buf):
            self._buf = self._bits.random_raw(self._BLOCK).tolist()
            self._pos = 0
        x = self._buf[self._pos]
        self._pos += 1
        return x

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)``."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        threshold = (_U64 - bound) % bound
        while True:
            x = self.next_u64()
            if x >= threshold:
                return x % bound

    def sample(self, population: int, k: int) -> list[int]:
        """``k`` distinct values from ``range(population)``, ascending (Floyd's algorithm)."""
        chosen: set[int] = set()
        for j in range(population - k, population):
            t = self.below(j + 1)
            chosen.add(j if t in chosen else t)
        return sorted(chosen)


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ParameterError(message)


def gen_random(n: int, min_out: int, max_out: int, max_prio: int, seed: int) -> ParityGame:
    """Uniform random game.

    Per vertex, in id order, draws owner, priority in ``[0, max_prio]``,
    out-degree in ``[min_out, max_out]`` and then the successor set.
    """
    _require(n >= 1, f"n must be >= 1, got {n}")
    _require(1 <= min_out <= max_out <= n, f"need 1 <= min_out <= max_out <= n, got {min_out}, {max_out}, n={n}")
    _require(max_prio >= 0, f"max_prio must be >= 0, got {max_prio}")
    rng = Pcg64Stream(seed)
    owners, prios, succs = [], [], []
    span = max_out - min_out + 1
    for _ in range(n):
        owners.append(rng.below(2))
        prios.append(rng.below(max_prio + 1))
        degree = min_out + rng.below(span)
        succs.append(rng.sample(n, degree))
    return ParityGame(owners, prios, succs).check()


def gen_clique(n: int, self_loops: bool = False) -> ParityGame:
    """Complete digraph; vertex ``i`` has priority ``i`` and is Even-owned iff ``i`` is even."""
    _require(n >= 1, f"n must be >= 1, got {n}")
    succs = []
    for i in range(n):
        s = [j for j in range(n) if j != i or self_loops or n == 1]
        succs.append(s)
    return ParityGame([i % 2 for i in range(n)], range(n), succs).check()


def gen_ladder(n: int) -> ParityGame:
    """``n`` layers of two; both vertices of layer ``i`` move to both of layer ``i + 1 (mod n)``.

    Vertex ``2i`` is Even-owned with priority 0, ``2i + 1`` Odd-owned with priority 1.
    """
    _require(n >= 1, f"n must be >= 1, got {n}")
    owners, prios, succs = [], [], []
    for i in range(n):
        j = (i + 1) % n
        nxt = [2 * j, 2 * j + 1]
        owners += [EVEN, ODD]
        prios += [0, 1]
        succs += [nxt, nxt]
    return ParityGame(owners, prios, succs).check()


RECURSIVE_LADDER_BLOCK = 3


def gen_recursive_ladder(n: int) -> ParityGame:
    """``n`` blocks of three vertices chained into one cycle.

    Block ``i``: ``p`` (Odd, priority ``2i + 1``) -> {q, s};
    ``q`` (Even, priority ``2i + 2``) -> {p, s of block i + 1 (mod n)};
    ``s`` (Odd, priority 0) -> {p}. Priorities grow with ``i`` along the
    chain, so every block adds two alternations.
    """
    _require(n >= 1, f"n must be >= 1, got {n}")
    owners, prios, succs = [], [], []
    for i in range(n):
        p, q, s = 3 * i, 3 * i + 1, 3 * i + 2
        s_next = 3 * ((i + 1) % n) + 2
        owners += [ODD, EVEN, ODD]
        prios += [2 * i + 1, 2 * i + 2, 0]
        succs += [sorted({q, s}), sorted({p, s_next}), [p]]
    return ParityGame(owners, prios, succs).check()


def gen_mc_ladder(n: int) -> ParityGame:
    """``n + 1`` layers ``(x_i, y_i)`` joined in a ring, so every cycle has length ``n + 1``.

    ``x_i`` (Odd, priority 1) -> {x_{i+1}, y_{i+1}}; ``y_i`` (Even, priority 2) -> {x_{i+1}}.
    """
    _require(n >= 1, f"n must be >= 1, got {n}")
    layers = n + 1
    owners, prios, succs = [], [], []
    for i in range(layers):
        j = (i + 1) % layers
        owners += [ODD, EVEN]
        prios += [1, 2]
        succs += [[2 * j, 2 * j + 1], [2 * j]]
    return ParityGame(owners, prios, succs).check()


def gen_jurdzinski(n: int, m: int) -> ParityGame:
    """Layered grid with ``n`` layers of ``2m + 1`` vertices.

    Layer ``i`` alternates ``e(i,0) o(i,0) e(i,1) ... o(i,m-1) e(i,m)``.
    ``e`` vertices are Odd-owned with priority ``2i + 2``; ``o`` vertices are
    Even-owned with priority ``2i + 1``. Within a row each vertex moves to its
    row neighbours; ``o(i,j)`` may also climb to ``e(i+1,j)`` and ``e(i,j)``
    may drop to ``e(i-1,j)``.
    """
    _require(n >= 1, f"n must be >= 1, got {n}")
    _require(m >= 1, f"m must be >= 1, got {m}")
    width = 2 * m + 1

    def e(i, j):
        return i * width + 2 * j

    def o(i, j):
        return i * width + 2 * j + 1

    total = n * width
    owners = [0] * total
    prios = [0] * total
    succs: list[list[int]] = [[] for _ in range(total)]
    for i in range(n):
        for j in range(m + 1):
            v = e(i, j)
            owners[v] = ODD
            prios[v] = 2 * i + 2
            s = []
            if j < m:
                s.append(o(i, j))
            if j > 0:
                s.append(o(i, j - 1))
            if i > 0:
                s.append(e(i - 1, j))
            succs[v] = sorted(s)
        for j in range(m):
            v = o(i, j)
            owners[v] = EVEN
            prios[v] = 2 * i + 1
            s = [e(i, j), e(i, j + 1)]
            if i < n - 1:
                s.append(e(i + 1, j))
            succs[v] = sorted(s)
    return ParityGame(owners, prios, succs).check()


FAMILIES = {
    "random": (gen_random, ("n", "min_out", "max_out", "max_prio")),
    "clique": (gen_clique, ("n",)),
    "ladder": (gen_ladder, ("n",)),
    "recursive_ladder": (gen_recursive_ladder, ("n",)),
    "mc_ladder": (gen_mc_ladder, ("n",)),
    "jurdzinski": (gen_jurdzinski, ("n", "m")),
}


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    params: dict = field(default_factory=dict)
    seed: Optional[int] = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ParameterError(f"unknown family {self.family!r}; choose from {sorted(FAMILIES)}")
        _, names = FAMILIES[self.family]
        missing = [k for k in names if k not in self.params]
        if missing:
            raise ParameterError(f"{self.family}: missing parameter(s) {', '.join(missing)}")
        unknown = sorted(set(self.params) - set(names) - {"self_loops"})
        if unknown:
            raise ParameterError(f"{self.family}: unknown parameter(s) {', '.join(unknown)}")
        if self.family == "random" and self.seed is None:
            raise ParameterError("random: a seed is required")

    @classmethod
    def from_dict(cls, data: dict) -> "GeneratorSpec":
        data = dict(data)
        family = data.pop("family")
        seed = data.pop("seed", None)
        params = data.pop("params", None)
        if params is None:
            params = data
        return cls(family, {k: v for k, v in params.items()}, seed)

    def to_dict(self) -> dict:
        out = {"family": self.family, "params": dict(self.params)}
        if self.seed is not None:
            out["seed"] = self.seed
        return out

    def canonical(self) -> str:
        """One-line archival form, e.g. ``random max_out=4 max_prio=7 min_out=2 n=100 seed=42``."""
        parts = [self.family] + [f"{k}={self.params[k]}" for k in sorted(self.params)]
        if self.seed is not None:
            parts.append(f"seed={self.seed}")
        return " ".join(parts)

    def build(self) -> ParityGame:
        fn, names = FAMILIES[self.family]
        args = [int(self.params[k]) for k in names]
        if self.family == "random":
            return fn(*args, int(self.seed))
        if self.family == "clique" and self.params.get("self_loops"):
            return fn(*args, self_loops=True)
        return fn(*args)


def generate(spec: GeneratorSpec) -> ParityGame:
    return spec.build()
