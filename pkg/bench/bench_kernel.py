#!/usr/bin/env python3
"""Benchmark the compiled elimination kernel against the pure-Python fallback.

Runs representative workloads (the same eliminations the cohomology
pipeline performs) in two subprocesses, one per kernel, and prints a
comparison table.  Usage: python bench/bench_kernel.py [--repeat N]
"""

import argparse
import json
import os
import subprocess
import sys
import time

WORKLOADS = [
    ("rank d_k, so(5) full complex", "rank_so5"),
    ("cohomology + representatives, gl(3)", "cohomology_gl3"),
    ("basic subcomplex, (gl(3), so(3))", "basic_gl3"),
    ("relative Betti, (gl(3), so(3))", "relative_gl3"),
]


def run_workload(case):
    from liecoh import builtin
    from liecoh.classes import canonical_gl_so_pair
    from liecoh.cohomology import ce_complex, compute_cohomology
    from liecoh.relative import basic_subcomplex, invariant_quotient_complex

    if case == "rank_so5":
        complex = ce_complex(builtin("so", 5))
        return [complex.differential(k).rank() for k in range(11)]
    if case == "cohomology_gl3":
        return compute_cohomology(ce_complex(builtin("gl", 3))).betti_numbers
    if case == "basic_gl3":
        return basic_subcomplex(canonical_gl_so_pair(3)).complex.dims
    if case == "relative_gl3":
        invq = invariant_quotient_complex(canonical_gl_so_pair(3))
        return compute_cohomology(invq.complex).betti_numbers
    raise SystemExit(f"unknown case {case}")


def worker(case, repeat):
    from liecoh.linalg import kernel_backend

    timings = []
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = run_workload(case)
        timings.append(time.perf_counter() - start)
    print(json.dumps({
        "backend": kernel_backend(),
        "case": case,
        "best": min(timings),
        "result": list(result),
    }))


def spawn(case, repeat, pure):
    env = dict(os.environ)
    if pure:
        env["LIECOH_PURE_PYTHON"] = "1"
    else:
        env.pop("LIECOH_PURE_PYTHON", None)
    out = subprocess.run(
        [sys.executable, __file__, "--worker", case, "--repeat", str(repeat)],
        capture_output=True, text=True, env=env, check=True,
    )
    return json.loads(out.stdout)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--worker", help=argparse.SUPPRESS)
    args = parser.parse_args()
    if args.worker:
        worker(args.worker, args.repeat)
        return
    rows = []
    for label, case in WORKLOADS:
        compiled = spawn(case, args.repeat, pure=False)
        pure = spawn(case, args.repeat, pure=True)
        if compiled["result"] != pure["result"]:
            raise SystemExit(f"backends disagree on {case}!")
        rows.append((label, compiled, pure))
    width = max(len(r[0]) for r in rows)
    print(f"{'workload'.ljust(width)}  {'compiled':>10}  {'pure':>10}  speedup")
    for label, compiled, pure in rows:
        note = "" if compiled["backend"] == "cython" else "  (extension not built)"
        print(
            f"{label.ljust(width)}  {compiled['best']:>9.3f}s  {pure['best']:>9.3f}s  "
            f"{pure['best'] / compiled['best']:>6.2f}x{note}"
        )


if __name__ == "__main__":
    main()
