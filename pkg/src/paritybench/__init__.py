"""Parity game benchmarking toolkit."""
from .core import (
    Diagnostic,
    InvalidGameError,
    ParityGame,
    ParseError,
    Player,
    WinningPartition,
    load_game,
    parse_pgsolver,
    save_game,
    validate,
    write_pgsolver,
)
from .altdepth import alternation_depth, nesting_depths
from .budget import MeasureTimeout
from .gen import GeneratorSpec, generate
from .report import StatsReport, collect_report
from .solve import attractor, solve_zielonka

__version__ = "0.1.0"
