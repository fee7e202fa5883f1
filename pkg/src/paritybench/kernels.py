"""Backend selection for the hot graph kernels.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
pure-Python ``_pykernels`` module. Setting ``PARITYBENCH_PURE_PYTHON=1`` forces
the fallback. Both backends are exposed through :class:`Backend`, which
adapts a :class:`~paritybench.core.ParityGame` to the CSR kernel signature.
"""
from __future__ import annotations

import os

import numpy as np

from . import _pykernels
from .budget import NO_DEADLINE

try:
    if os.environ.get("PARITYBENCH_PURE_PYTHON"):
        raise ImportError("pure Python backend forced")
    from . import _ckernels
except ImportError:
    _ckernels = None


class Backend:
    def __init__(self, name: str, module, lists: bool):
        self.name = name
        self._mod = module
        self._lists = lists

    def _csr(self, game):
        indptr, indices = game.csr()
        if self._lists:
            key = "csr_lists"
            cached = game._cache.get(key)
            if cached is None:
                cached = (indptr.tolist(), indices.tolist())
                game._cache[key] = cached
            return cached
        return indptr, indices

    def _owners(self, game):
        if self._lists:
            return game.owners
        return np.asarray(game.owners, dtype=np.int8)

    def diameter(self, game, deadline: float = NO_DEADLINE) -> int:
        return int(self._mod.diameter(*self._csr(game), deadline))

    def girth(self, game, deadline: float = NO_DEADLINE) -> int:
        return int(self._mod.girth(*self._csr(game), deadline))

    def diamonds(self, game, deadline: float = NO_DEADLINE) -> tuple[int, int, int]:
        total, even, odd = self._mod.diamonds(*self._csr(game), self._owners(game), deadline)
        return int(total), int(even), int(odd)

    def neighbourhoods(self, game, k: int, deadline: float = NO_DEADLINE) -> tuple[list, list]:
        sizes, edges = self._mod.neighbourhoods(*self._csr(game), k, deadline)
        return list(map(int, sizes)), list(map(int, edges))

    def __repr__(self) -> str:
        return f"Backend({self.name!r})"


PYTHON = Backend("python", _pykernels, lists=True)
CYTHON = Backend("cython", _ckernels, lists=False) if _ckernels is not None else None

BACKENDS = {b.name: b for b in (CYTHON, PYTHON) if b is not None}
DEFAULT = CYTHON or PYTHON


def get_backend(name: str | None = None) -> Backend:
    if name is None:
        return DEFAULT
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"kernel backend {name!r} is not available; have {sorted(BACKENDS)}") from None
