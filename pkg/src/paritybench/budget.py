"""Cooperative time budgets.

Long-running measures take an absolute ``deadline`` (a ``time.monotonic``
timestamp, ``math.inf`` for none) and poll it, raising
:class:`MeasureTimeout` once it has passed.
"""
from __future__ import annotations

import math
import time
from typing import Optional

NO_DEADLINE = math.inf


class MeasureTimeout(Exception):
    """A measure did not finish before its deadline."""


def deadline_after(seconds: Optional[float]) -> float:
    if seconds is None:
        return NO_DEADLINE
    return time.monotonic() + seconds


def check(deadline: float) -> None:
    if deadline != NO_DEADLINE and time.monotonic() > deadline:
        raise MeasureTimeout()
