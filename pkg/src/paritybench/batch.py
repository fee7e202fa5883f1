"""Batch execution of benchmark cases with per-case time limits.

A manifest is JSON, either a list of cases or ``{"defaults": {...}, "cases": [...]}``.
Each case is an object::

    {"id": "c1", "action": "info" | "generate" | "solve",
     "input": "games/x.gm"            # or
     "generator": {"family": "random", "params": {...}, "seed": 1},
     "measures": ["diameter"], "k": [1, 2, 3],
     "timeout": 3600, "memory_mb": 32768, "force": false}

Relative input paths are resolved against the manifest's directory. Every
case writes ``<id>.json`` into the results directory (generate cases also
``<id>.gm``), and the run ends by writing ``index.json``. Cases whose result
file already exists are not re-run.
"""
from __future__ import annotations

import concurrent.futures as cf
import hashlib
import json
import multiprocessing
import os
import tempfile
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .budget import MeasureTimeout, deadline_after
from .core import load_game, write_pgsolver
from .gen import GeneratorSpec, ParameterError
from .report import DEFAULT_K, collect_report, parse_measures
from .solve import solve_zielonka

DEFAULT_TIMEOUT = 3600.0
DEFAULT_MEMORY_MB = 32 * 1024
ACTIONS = ("info", "generate", "solve")
STATUSES = ("ok", "timeout", "error")


class ManifestError(ValueError):
    pass


@dataclass
class Case:
    id: str
    action: str
    input: Optional[str] = None
    generator: Optional[dict] = None
    measures: Optional[list] = None
    k: list = field(default_factory=lambda: list(DEFAULT_K))
    timeout: float = DEFAULT_TIMEOUT
    memory_mb: int = DEFAULT_MEMORY_MB
    force: bool = False


def load_manifest(path: str | os.PathLike) -> list[Case]:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ManifestError(f"cannot read manifest: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ManifestError(f"manifest is not valid JSON: {exc}") from None
    return parse_manifest(data, base=path.parent)


def parse_manifest(data, base: Path = Path(".")) -> list[Case]:
    defaults: dict = {}
    if isinstance(data, dict):
        defaults = data.get("defaults", {})
        data = data.get("cases")
    if not isinstance(data, list):
        raise ManifestError("manifest must contain a list of cases")
    cases: list[Case] = []
    seen: set[str] = set()
    for pos, raw in enumerate(data):
        if not isinstance(raw, dict):
            raise ManifestError(f"case #{pos} is not an object")
        merged = {**defaults, **raw}
        cid = merged.get("id")
        if not isinstance(cid, str) or not cid or "/" in cid or cid.startswith("."):
            raise ManifestError(f"case #{pos}: 'id' must be a plain non-empty string")
        if cid == "index":
            raise ManifestError("case id 'index' is reserved")
        if cid in seen:
            raise ManifestError(f"duplicate case id {cid!r}")
        seen.add(cid)
        action = merged.get("action", "info")
        if action not in ACTIONS:
            raise ManifestError(f"case {cid}: unknown action {action!r}")
        unknown = set(merged) - set(Case.__dataclass_fields__)
        if unknown:
            raise ManifestError(f"case {cid}: unknown field(s) {', '.join(sorted(unknown))}")
        has_input = merged.get("input") is not None
        has_gen = merged.get("generator") is not None
        if has_input == has_gen:
            raise ManifestError(f"case {cid}: exactly one of 'input' and 'generator' is required")
        if action == "generate" and not has_gen:
            raise ManifestError(f"case {cid}: generate needs a 'generator'")
        if has_gen:
            try:
                GeneratorSpec.from_dict(merged["generator"])
            except (ParameterError, KeyError, TypeError) as exc:
                raise ManifestError(f"case {cid}: bad generator: {exc}") from None
        if has_input:
            merged["input"] = str((base / merged["input"]).resolve())
        if merged.get("measures") is not None:
            try:
                merged["measures"] = list(parse_measures(merged["measures"]))
            except ValueError as exc:
                raise ManifestError(f"case {cid}: {exc}") from None
        timeout = merged.get("timeout", DEFAULT_TIMEOUT)
        if not isinstance(timeout, (int, float)) or timeout <= 0:
            raise ManifestError(f"case {cid}: timeout must be a positive number of seconds")
        merged["action"] = action
        cases.append(Case(**merged))
    return cases


def _write_atomic(path: Path, data: bytes) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _write_json(path: Path, payload: dict) -> None:
    _write_atomic(path, (json.dumps(payload, indent=2) + "\n").encode("utf-8"))


def _record(case: Case, status: str, wall_ms: float, result=None, error=None) -> dict:
    return {
        "id": case.id,
        "action": case.action,
        "status": status,
        "wall_time_ms": round(wall_ms, 3),
        "result": result,
        "error": error,
    }


def execute_case(case: Case, results_dir: str | os.PathLike) -> dict:
    """Run one case in-process and write its result file; returns the record."""
    results_dir = Path(results_dir)
    deadline = deadline_after(case.timeout)
    start = time.perf_counter()
    status, result, error = "ok", None, None
    try:
        if case.generator is not None:
            spec = GeneratorSpec.from_dict(case.generator)
            game = spec.build()
            source = spec.canonical()
        else:
            spec = None
            game = load_game(case.input)
            source = case.input
        if case.action == "info":
            measures = case.measures if case.measures is not None else parse_measures(None)
            report = collect_report(
                game, measures, k_values=case.k, deadline=deadline, force=case.force,
                name=case.id, file=source,
            )
            result = report.to_dict()
            if report.timed_out:
                status = "timeout"
        elif case.action == "generate":
            data = write_pgsolver(game).encode("utf-8")
            _write_atomic(results_dir / f"{case.id}.gm", data)
            result = {
                "spec": spec.canonical(),
                "file": f"{case.id}.gm",
                "sha256": hashlib.sha256(data).hexdigest(),
                "num_vertices": game.num_vertices,
                "num_edges": game.num_edges,
            }
        else:
            result = solve_zielonka(game, deadline).to_dict()
    except MeasureTimeout:
        status = "timeout"
    except Exception as exc:  # a failing case must not take the batch down
        status, error = "error", f"{type(exc).__name__}: {exc}"
    wall_ms = (time.perf_counter() - start) * 1000.0
    record = _record(case, status, wall_ms, result, error)
    _write_json(results_dir / f"{case.id}.json", record)
    return record


def _isolated_entry(case: Case, results_dir: str) -> None:
    try:
        import resource

        limit = case.memory_mb * 1024 * 1024
        resource.setrlimit(resource.RLIMIT_AS, (limit, limit))
    except (ImportError, ValueError, OSError):
        pass
    execute_case(case, results_dir)


def _run_isolated(case: Case, results_dir: str, grace: float = 5.0) -> dict:
    """Run a case in a child process that is killed at twice its timeout."""
    ctx = multiprocessing.get_context("fork")
    proc = ctx.Process(target=_isolated_entry, args=(case, results_dir))
    start = time.perf_counter()
    proc.start()
    proc.join(2 * case.timeout + grace)
    if proc.is_alive():
        proc.kill()
        proc.join()
        record = _record(case, "timeout", (time.perf_counter() - start) * 1000.0,
                         error="killed after exceeding the hard time limit")
        _write_json(Path(results_dir) / f"{case.id}.json", record)
        return record
    path = Path(results_dir) / f"{case.id}.json"
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError):
        record = _record(case, "error", (time.perf_counter() - start) * 1000.0,
                         error=f"worker exited with code {proc.exitcode} without a result")
        _write_json(path, record)
        return record


def _completed(path: Path) -> Optional[dict]:
    try:
        record = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError):
        return None
    if isinstance(record, dict) and record.get("status") in STATUSES:
        return record
    return None


def run_batch(
    cases: list[Case],
    results_dir: str | os.PathLike,
    parallelism: int = 1,
    *,
    isolate: bool = False,
) -> dict:
    """Run every case not already completed in ``results_dir``; returns the index."""
    if parallelism < 1:
        raise ValueError("parallelism must be >= 1")
    out = Path(results_dir)
    out.mkdir(parents=True, exist_ok=True)
    records: dict[str, dict] = {}
    pending: list[Case] = []
    for case in cases:
        done = _completed(out / f"{case.id}.json")
        if done is not None:
            records[case.id] = done
        else:
            pending.append(case)

    if isolate:
        with cf.ThreadPoolExecutor(max_workers=parallelism) as pool:
            for record in pool.map(lambda c: _run_isolated(c, str(out)), pending):
                records[record["id"]] = record
    elif parallelism == 1 or len(pending) <= 1:
        for case in pending:
            records[case.id] = execute_case(case, out)
    else:
        ctx = multiprocessing.get_context("fork")
        with cf.ProcessPoolExecutor(max_workers=parallelism, mp_context=ctx) as pool:
            futures = {pool.submit(execute_case, case, str(out)): case for case in pending}
            for fut in cf.as_completed(futures):
                case = futures[fut]
                try:
                    records[case.id] = fut.result()
                except Exception as exc:
                    record = _record(case, "error", 0.0, error=f"{type(exc).__name__}: {exc}")
                    _write_json(out / f"{case.id}.json", record)
                    records[case.id] = record

    index = {
        "executed": [c.id for c in pending],
        "cases": [
            {
                "id": c.id,
                "status": records[c.id]["status"],
                "wall_time_ms": records[c.id]["wall_time_ms"],
                "result_file": f"{c.id}.json",
            }
            for c in cases
        ],
    }
    _write_json(out / "index.json", index)
    return index
