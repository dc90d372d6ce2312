"""Compare the compiled and pure-Python kernel backends.

Runs the same insert/lookup batches through both kernel modules and prints
per-op timings plus the speedup.  The pure backend is two to three orders
slower; this script exists to quantify that on the current machine and to
spot regressions in either path.

Usage: python benchmarks/backend_bench.py [--n 100000] [--alpha 4] [--seed 42]
"""

from __future__ import annotations

import argparse
import importlib
import time

from countbf.filter import CountBF
from countbf.sizing import plan
from countbf.workloads import make_workload


def _load_backends() -> dict[str, object]:
    backends = {"py": importlib.import_module("countbf._kernels_py")}
    try:
        backends["c"] = importlib.import_module("countbf._speedups")
    except ImportError:
        print("note: compiled extension unavailable; timing pure Python only")
    return backends


def _time_filter(kernels, n: int, alpha: int, seed: int) -> dict[str, float]:
    workload = make_workload("mixed", n, n, seed)
    filt = CountBF(plan(n, 0.001, alpha, 64, master_seed=seed), kernels=kernels)

    t0 = time.perf_counter_ns()
    filt.insert_many(workload.inserted)
    t1 = time.perf_counter_ns()
    positives = filt.lookup_many(workload.queries)
    t2 = time.perf_counter_ns()

    return {
        "insert_ns_per_op": (t1 - t0) / n,
        "lookup_ns_per_op": (t2 - t1) / n,
        "positives": positives,
    }


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=100_000)
    parser.add_argument("--alpha", type=int, default=4)
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args()

    results = {}
    for name, kernels in _load_backends().items():
        n = args.n if name == "c" else min(args.n, 20_000)  # keep the pure run short
        results[name] = (n, _time_filter(kernels, n, args.alpha, args.seed))

    print(f"{'backend':<8} {'n':>8} {'insert ns/op':>14} {'lookup ns/op':>14} {'positives':>10}")
    for name, (n, r) in results.items():
        print(
            f"{name:<8} {n:>8} {r['insert_ns_per_op']:>14.1f} "
            f"{r['lookup_ns_per_op']:>14.1f} {r['positives']:>10}"
        )

    if "c" in results:
        py_n, py_r = results["py"]
        c_n, c_r = results["c"]
        ins = py_r["insert_ns_per_op"] / c_r["insert_ns_per_op"]
        look = py_r["lookup_ns_per_op"] / c_r["lookup_ns_per_op"]
        print(f"\nspeedup (py/c): insert {ins:.0f}x, lookup {look:.0f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
