"""Compare the compiled and pure-Python kernel backends.

    python3 benchmarks/bench_kernels.py                 # default sizes
    python3 benchmarks/bench_kernels.py --n 500 --repeat 1 --json out.json

Each kernel runs on the same games with both backends; results are checked
for equality before timings are reported.
"""
from __future__ import annotations

import argparse
import json
import statistics
import sys
import time

from paritybench.gen import gen_jurdzinski, gen_mc_ladder, gen_random
from paritybench.kernels import BACKENDS

KERNELS = {
    "diameter": lambda b, g: b.diameter(g),
    "girth": lambda b, g: b.girth(g),
    "diamonds": lambda b, g: b.diamonds(g),
    "hood_k2": lambda b, g: b.neighbourhoods(g, 2),
}


def workloads(n: int) -> dict:
    return {
        f"random n={n}": gen_random(n, 1, 4, 9, seed=1),
        f"mc_ladder n={n // 2}": gen_mc_ladder(n // 2),
        f"jurdzinski {max(1, n // 40)}x10": gen_jurdzinski(max(1, n // 40), 10),
    }


def time_call(fn, repeat: int) -> tuple[float, object]:
    samples = []
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        samples.append(time.perf_counter() - start)
    return statistics.median(samples), result


def run(n: int, repeat: int) -> list[dict]:
    rows = []
    for wname, game in workloads(n).items():
        for kname, kernel in KERNELS.items():
            row = {"workload": wname, "kernel": kname}
            results = {}
            for bname, backend in sorted(BACKENDS.items()):
                kernel(backend, game)  # warm caches (CSR conversion)
                secs, results[bname] = time_call(lambda: kernel(backend, game), repeat)
                row[bname] = secs
            if len({json.dumps(r) for r in results.values()}) != 1:
                raise SystemExit(f"backends disagree on {kname} / {wname}: {results}")
            rows.append(row)
    return rows


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=2000, help="approximate game size")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", help="also write the rows here")
    args = ap.parse_args(argv)

    if "cython" not in BACKENDS:
        print("compiled extension not available; only the Python backend is timed", file=sys.stderr)
    rows = run(args.n, args.repeat)
    names = sorted(BACKENDS)
    header = f"{'workload':<24} {'kernel':<10}" + "".join(f"{b:>12}" for b in names)
    if len(names) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for row in rows:
        line = f"{row['workload']:<24} {row['kernel']:<10}" + "".join(f"{row[b] * 1000:>10.1f}ms" for b in names)
        if len(names) == 2:
            line += f"{row['python'] / max(row['cython'], 1e-9):>9.1f}x"
        print(line)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(rows, fh, indent=2)
    return 0


if __name__ == "__main__":
    sys.exit(main())
