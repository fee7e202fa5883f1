"""Assemble a :class:`StatsReport` from individually timed measures."""
from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Iterable, Optional, Sequence

from . import altdepth, stats, width
from .budget import NO_DEADLINE, MeasureTimeout
from .core import ParityGame

SCHEMA_ID = "paritybench.report/1"

MEASURES = (
    "sizes",
    "degrees",
    "sccs",
    "bfs",
    "dfs",
    "diameter",
    "girth",
    "diamonds",
    "neighbourhoods",
    "altdepth",
    "width",
)
DEFAULT_MEASURES = tuple(m for m in MEASURES if m != "width")
# measures skipped on games above SIZE_CUTOFF vertices unless forced
EXPENSIVE = ("diameter", "girth", "diamonds")
SIZE_CUTOFF = 100_000
DEFAULT_K = (1, 2, 3)


@dataclass
class StatsReport:
    name: Optional[str] = None
    file: Optional[str] = None
    sizes: Optional[stats.SizeSummary] = None
    degrees: Optional[stats.DegreeSummary] = None
    sccs: Optional[stats.SccMetrics] = None
    bfs: Optional[stats.BfsMetrics] = None
    dfs: Optional[stats.DfsMetrics] = None
    diameter: Optional[int] = None
    girth: Optional[int] = None
    diamonds: Optional[stats.DiamondCounts] = None
    neighbourhoods: Optional[dict[int, stats.NeighbourhoodSummary]] = None
    alternation_depth: Optional[int] = None
    nesting_depth: Optional[list[int]] = None
    treewidth_lb: Optional[int] = None
    treewidth_ub: Optional[int] = None
    kellywidth_ub: Optional[int] = None
    times_ms: dict[str, float] = field(default_factory=dict)
    timed_out: list[str] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        def group(obj):
            return None if obj is None else asdict(obj)

        sizes = group(self.sizes)
        if sizes is not None:
            sizes["count_per_priority"] = {str(k): v for k, v in sizes["count_per_priority"].items()}
        hoods = None
        if self.neighbourhoods is not None:
            hoods = {}
            for k, summary in sorted(self.neighbourhoods.items()):
                hoods[str(k)] = {"k": k, "size": asdict(summary.size), "clustering": asdict(summary.clustering)}
        return {
            "schema": SCHEMA_ID,
            "game": {"name": self.name, "file": self.file},
            "sizes": sizes,
            "degrees": group(self.degrees),
            "sccs": group(self.sccs),
            "bfs": group(self.bfs),
            "dfs": group(self.dfs),
            "diameter": self.diameter,
            "girth": self.girth,
            "diamonds": group(self.diamonds),
            "neighbourhoods": hoods,
            "alternation_depth": self.alternation_depth,
            "nesting_depth": self.nesting_depth,
            "treewidth_lb": self.treewidth_lb,
            "treewidth_ub": self.treewidth_ub,
            "kellywidth_ub": self.kellywidth_ub,
            "times_ms": {k: round(v, 3) for k, v in self.times_ms.items()},
            "timed_out": list(self.timed_out),
            "skipped": list(self.skipped),
        }

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=False)


def parse_measures(text: str | Iterable[str] | None) -> tuple[str, ...]:
    if text is None:
        return DEFAULT_MEASURES
    names = [t.strip() for t in text.split(",")] if isinstance(text, str) else list(text)
    names = [n for n in names if n]
    if names == ["all"]:
        return MEASURES
    unknown = sorted(set(names) - set(MEASURES))
    if unknown:
        raise ValueError(f"unknown measure(s): {', '.join(unknown)}; choose from {', '.join(MEASURES)}")
    return tuple(m for m in MEASURES if m in names)


def collect_report(
    game: ParityGame,
    measures: Sequence[str] = DEFAULT_MEASURES,
    *,
    k_values: Sequence[int] = DEFAULT_K,
    timeout: Optional[float] = None,
    deadline: float = NO_DEADLINE,
    force: bool = False,
    name: Optional[str] = None,
    file: Optional[str] = None,
    backend=None,
) -> StatsReport:
    """Compute the selected measures of ``game``.

    ``timeout`` bounds each measure separately; ``deadline`` bounds the whole
    report. A measure that runs out of time is left as ``None`` and listed
    in ``timed_out``; the remaining measures are still attempted.
    """
    report = StatsReport(name=name, file=file)
    large = game.num_vertices > SIZE_CUTOFF and not force

    def run(key: str, fn):
        if key in EXPENSIVE and large:
            report.skipped.append(key)
            return
        limit = deadline if timeout is None else min(deadline, time.monotonic() + timeout)
        start = time.perf_counter()
        try:
            fn(limit)
        except MeasureTimeout:
            report.timed_out.append(key)
        finally:
            report.times_ms[key] = (time.perf_counter() - start) * 1000.0

    def _sizes(_):
        report.sizes = stats.size_summary(game)

    def _degrees(_):
        report.degrees = stats.degree_summary(game)

    def _sccs(_):
        report.sccs = stats.scc_metrics(stats.scc_decompose(game))

    def _bfs(_):
        report.bfs = stats.bfs_metrics(game)

    def _dfs(_):
        report.dfs = stats.dfs_metrics(game)

    def _diameter(limit):
        report.diameter = stats.diameter(game, limit, backend)

    def _girth(limit):
        report.girth = stats.girth(game, limit, backend)

    def _diamonds(limit):
        report.diamonds = stats.count_diamonds(game, limit, backend)

    def _hoods(limit):
        out = {}
        for k in k_values:
            out[k] = stats.neighbourhood_summary(game, k, limit, backend)
        report.neighbourhoods = out

    def _altdepth(limit):
        per_scc = altdepth.component_nesting_depths(game, limit)
        report.nesting_depth = per_scc
        report.alternation_depth = max(per_scc, default=1)

    table = {
        "sizes": _sizes,
        "degrees": _degrees,
        "sccs": _sccs,
        "bfs": _bfs,
        "dfs": _dfs,
        "diameter": _diameter,
        "girth": _girth,
        "diamonds": _diamonds,
        "neighbourhoods": _hoods,
        "altdepth": _altdepth,
    }
    for key in MEASURES:
        if key not in measures:
            continue
        if key == "width":
            # each bound is timed and may time out on its own
            def _lb(limit):
                report.treewidth_lb = width.treewidth_lower_mmw(game, limit)

            def _ub(limit):
                report.treewidth_ub = width.treewidth_upper_greedy_degree(game, limit)

            def _kw(limit):
                report.kellywidth_ub = width.kellywidth_upper(game, limit)

            run("treewidth_lb", _lb)
            run("treewidth_ub", _ub)
            run("kellywidth_ub", _kw)
            continue
        run(key, table[key])
    return report
