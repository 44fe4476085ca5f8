"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--k 8 --t 3 --users 3 --mib 4]

Each kernel is timed on inputs drawn from an expanded MN array (the C3 and C4
scans) and on random buffers (XOR). The end-to-end rows time validate_gpda and
simulate with the active backend swapped in.
"""

import argparse
import timeit

import numpy as np

from pdacache import FileLibrary, build_mn_pda, expand, kernels, simulate, validate_gpda


def c3_inputs(g):
    rows, cols, offsets = [], [], [0]
    for cells in g.cells_by_label().values():
        for j, k in cells:
            rows.append(j)
            cols.append(k)
        offsets.append(len(rows))
    return (*kernels.as_cells(rows, cols, offsets), np.ascontiguousarray(g.star_mask(), np.uint8))


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def with_backend(name, fn):
    saved = kernels._impl
    kernels._impl = kernels.backend(name)
    try:
        return fn()
    finally:
        kernels._impl = saved


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, default=8)
    ap.add_argument("--t", type=int, default=3)
    ap.add_argument("--users", type=int, default=3, help="users per cache")
    ap.add_argument("--mib", type=float, default=4.0, help="XOR buffer size")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    pda = build_mn_pda(args.k, args.t)
    g, assignment = expand(pda, [args.users] * args.k)
    rows, cols, offsets, star = c3_inputs(g)
    base = np.ascontiguousarray(g.base_values(), np.intc)
    n = int(args.mib * 2**20)
    rng = np.random.default_rng(1)
    src = bytearray(rng.bytes(n))
    dst = bytearray(rng.bytes(n))
    lib = FileLibrary.random(g.num_users_K, 4096, g.num_rows_F, seed=2)
    demands = list(range(g.num_users_K))

    names = [b for b in ("python", "cython") if b in kernels._BACKENDS]
    print(f"G: K={g.num_users_K} F={g.num_rows_F} S={g.num_integers_S} I={g.max_superscript_I}")
    print(f"active backend: {kernels.BACKEND}")
    cases = [
        ("C3 pair scan", lambda b: kernels.label_pair_violations(rows, cols, star, offsets, impl=b)),
        ("C4 scan", lambda b: kernels.c4_violations(base, star, impl=b)),
        (f"XOR {args.mib:g} MiB", lambda b: kernels.xor_into(dst, src, impl=b)),
    ]
    end_to_end = [
        ("validate_gpda", lambda: validate_gpda(g)),
        ("simulate 4 KiB files", lambda: simulate(g, demands, lib, assignment)),
    ]
    print(f"{'kernel':<22}" + "".join(f"{n:>12}" for n in names) + f"{'speedup':>10}")
    for label, fn in cases:
        times = [best(lambda: fn(kernels.backend(name)), args.repeat) for name in names]
        print(_row(label, times))
    for label, fn in end_to_end:
        times = [with_backend(name, lambda: best(fn, args.repeat)) for name in names]
        print(_row(label, times))


def _row(label, times):
    cells = "".join(f"{t * 1e6:>10.0f}us" for t in times)
    speedup = f"{times[0] / times[-1]:>9.1f}x" if len(times) > 1 else ""
    return f"{label:<22}{cells}{speedup}"


if __name__ == "__main__":
    main()
