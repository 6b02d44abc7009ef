#!/usr/bin/env python3
"""Time the integer fixpoint kernel's two backends on capture-time instances.

The compiled kernel sweeps states in place (Gauss-Seidel style) while the
numpy fallback runs whole-array Jacobi rounds; both must produce the same
value table, so besides the timings this doubles as an equality check on
sizable arenas. Run from anywhere:

    python3 scripts/bench_backends.py [--repeat 5]
"""

import argparse
import statistics
import time

import numpy as np

from scar import build_arena, builtin
from scar.fixpoint import INT_INF, backend_name, solve_layers


def instances():
    yield "petersen n=3", build_arena(builtin("petersen"), 3)
    yield "dodecahedron n=3", build_arena(builtin("dodecahedron"), 3)
    yield "path:12 n=4", build_arena(builtin("path", 12), 4)
    yield "petersen n=4", build_arena(builtin("petersen"), 4)


def capture_time_inputs(arena):
    init = np.where(arena.capture_mask, 0, INT_INF).astype(np.int64)
    minimizing = ~np.asarray(arena.robber_mover_mask())
    return arena.offsets, arena.targets, minimizing, arena.capture_mask, init


def bench(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return out, min(times), statistics.median(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5, help="timed runs per backend")
    args = ap.parse_args()

    if backend_name() != "compiled":
        print("note: compiled kernel unavailable, timing numpy against itself")
    header = f"{'instance':<18} {'states':>8} {'edges':>9} {'compiled':>10} {'numpy':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for label, arena in instances():
        inputs = capture_time_inputs(arena)
        got_c, best_c, _ = bench(lambda: solve_layers(*inputs, backend="compiled"), args.repeat)
        got_n, best_n, _ = bench(lambda: solve_layers(*inputs, backend="numpy"), args.repeat)
        if not np.array_equal(got_c, got_n):
            raise SystemExit(f"backend mismatch on {label}")
        print(
            f"{label:<18} {arena.n_states:>8} {len(arena.targets):>9} "
            f"{best_c * 1e3:>8.2f}ms {best_n * 1e3:>8.2f}ms {best_n / best_c:>7.1f}x"
        )


if __name__ == "__main__":
    main()