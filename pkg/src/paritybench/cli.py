"""Command-line interface: ``info``, ``generate``, ``solve`` and ``batch``.

Exit codes: 0 on success (including reports with timed-out measures),
2 on usage, I/O or input errors.
"""
from __future__ import annotations

import argparse
import bz2
import json
import logging
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from .batch import ManifestError, load_manifest, run_batch
from .core import InvalidGameError, ParseError, load_game, write_pgsolver
from .gen import FAMILIES, GeneratorSpec, ParameterError
from .kernels import BACKENDS
from .report import DEFAULT_K, MEASURES, collect_report, parse_measures
from .solve import SolverBudgetExceeded, solve_zielonka
from .budget import MeasureTimeout, deadline_after

log = logging.getLogger("paritybench")

EXIT_OK = 0
EXIT_INPUT = 2


def _k_values(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid k list {text!r}") from None
    if not values or any(k < 1 for k in values):
        raise argparse.ArgumentTypeError("k values must be positive integers")
    return values


def _load(path: str, lenient: bool):
    try:
        return load_game(path, strict=not lenient)
    except FileNotFoundError:
        print(f"error: {path}: no such file", file=sys.stderr)
    except (ParseError, InvalidGameError) as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
    except (OSError, EOFError, ValueError) as exc:
        # unreadable file, corrupt bzip2 stream or non-UTF-8 bytes
        print(f"error: {path}: {exc}", file=sys.stderr)
    return None


def cmd_info(args) -> int:
    try:
        measures = parse_measures(args.measures)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    game = _load(args.file, args.lenient)
    if game is None:
        return EXIT_INPUT
    report = collect_report(
        game,
        measures,
        k_values=args.k,
        timeout=args.timeout,
        force=args.force,
        name=Path(args.file).name,
        file=args.file,
        backend=args.backend,
    )
    text = report.to_json() + "\n"
    if args.json:
        try:
            Path(args.json).write_text(text, encoding="utf-8")
        except OSError as exc:
            print(f"error: cannot write {args.json}: {exc}", file=sys.stderr)
            return EXIT_INPUT
    else:
        sys.stdout.write(text)
    for key in report.timed_out:
        log.warning("measure %s timed out", key)
    return EXIT_OK


def cmd_generate(args) -> int:
    family = args.family.replace("-", "_")
    _, names = FAMILIES[family]
    params = {}
    for name in names:
        value = getattr(args, name)
        if value is None:
            print(f"error: {args.family} requires --{name.replace('_', '-')}", file=sys.stderr)
            return EXIT_INPUT
        params[name] = value
    if args.self_loops:
        if family != "clique":
            print("error: --self-loops only applies to clique", file=sys.stderr)
            return EXIT_INPUT
        params["self_loops"] = True
    seed = args.seed if family == "random" else None
    try:
        spec = GeneratorSpec(family, params, seed)
        game = spec.build()
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    data = write_pgsolver(game).encode("utf-8")
    if args.output and args.output != "-":
        if args.bz2 or args.output.endswith(".bz2"):
            data = bz2.compress(data)
        try:
            Path(args.output).write_bytes(data)
        except OSError as exc:
            print(f"error: cannot write {args.output}: {exc}", file=sys.stderr)
            return EXIT_INPUT
        print(spec.canonical())
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
        print(spec.canonical(), file=sys.stderr)
    return EXIT_OK


def cmd_solve(args) -> int:
    game = _load(args.file, args.lenient)
    if game is None:
        return EXIT_INPUT
    start = time.perf_counter()
    try:
        part = solve_zielonka(game, deadline_after(args.timeout))
    except (MeasureTimeout, SolverBudgetExceeded) as exc:
        print(f"error: solver gave up: {exc or 'time limit reached'}", file=sys.stderr)
        return 1
    elapsed = (time.perf_counter() - start) * 1000.0
    if args.summary:
        v = game.initial_vertex or 0
        who = "even" if v in part.won_even else "odd"
        print(f"vertex {v} is won by {who} ({len(part.won_even)} even, {len(part.won_odd)} odd; {elapsed:.3f} ms)")
    else:
        payload = part.to_dict()
        payload["time_ms"] = round(elapsed, 3)
        print(json.dumps(payload, separators=(",", ":")))
    return EXIT_OK


def cmd_batch(args) -> int:
    try:
        cases = load_manifest(args.manifest)
    except ManifestError as exc:
        print(f"error: {args.manifest}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    out = args.output or str(Path(args.manifest).with_suffix("")) + "-results"
    index = run_batch(cases, out, args.jobs, isolate=args.isolate)
    counts: dict[str, int] = {}
    for entry in index["cases"]:
        counts[entry["status"]] = counts.get(entry["status"], 0) + 1
    summary = ", ".join(f"{v} {k}" for k, v in sorted(counts.items()))
    print(f"{len(index['cases'])} cases ({len(index['executed'])} run): {summary}; results in {out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="paritybench", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="compute structural statistics of a game")
    p.add_argument("file")
    p.add_argument("--json", metavar="PATH", help="write the report here instead of stdout")
    p.add_argument(
        "--measures",
        help=f"comma-separated subset of {','.join(MEASURES)} or 'all' (default: all but width)",
    )
    p.add_argument("--k", type=_k_values, default=DEFAULT_K, help="neighbourhood radii (default 1,2,3)")
    p.add_argument("--timeout", type=float, help="per-measure time limit in seconds")
    p.add_argument("--force", action="store_true", help="run expensive measures on large games")
    p.add_argument("--backend", choices=sorted(BACKENDS), help="kernel backend")
    p.add_argument("--lenient", action="store_true", help="renumber sparse vertex ids")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("generate", help="generate a game in PGSolver format")
    p.add_argument("family", choices=sorted({f.replace("_", "-") for f in FAMILIES} | set(FAMILIES)))
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--min-out", dest="min_out", type=int)
    p.add_argument("--max-out", dest="max_out", type=int)
    p.add_argument("--max-prio", dest="max_prio", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--self-loops", dest="self_loops", action="store_true")
    p.add_argument("-o", "--output", help="output file (default stdout)")
    p.add_argument("--bz2", action="store_true", help="bzip2-compress the output file")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("solve", help="compute the winning partition")
    p.add_argument("file")
    p.add_argument("--summary", action="store_true", help="one line about the initial vertex")
    p.add_argument("--timeout", type=float)
    p.add_argument("--lenient", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("batch", help="run a manifest of cases")
    p.add_argument("manifest")
    p.add_argument("-j", "--jobs", type=int, default=1, help="cases in flight (default 1)")
    p.add_argument("-o", "--output", help="results directory (default <manifest>-results)")
    p.add_argument("--isolate", action="store_true", help="one killable subprocess per case")
    p.set_defaults(func=cmd_batch)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
    )
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
