"""numba vs numpy timings for the integer kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Kernel timings call the ``*_nb`` and ``*_np`` variants directly on inputs
taken from real groups.  The end-to-end rows run a fresh interpreter per
backend (``BPI_DISABLE_NUMBA``) so caches and JIT warm-up are included.
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from bpi import kernels
from bpi.groups import group_from_generators
from bpi.perm import parse_cycles

P = 1000003


def best(fn, repeat):
    fn()  # warm-up, triggers compilation
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def symmetric(n):
    cyc = "(" + " ".join(str(i) for i in range(1, n + 1)) + ")"
    return group_from_generators(n, [parse_cycles(cyc, n), parse_cycles("(1 2)", n)])


def kernel_cases():
    S6 = symmetric(6)
    S7 = symmetric(7)
    rng = np.random.default_rng(1)
    table = S7.table
    gens = np.array([1, 7], dtype=np.int64)
    maps = np.stack([S7.conjugation_map(g) for g in S7.generator_indices()]).astype(np.int64)
    cls = S6.classes
    y = S6.table[S6.inverse][:, cls.rep_index].astype(np.int64)
    cof = cls.class_of.astype(np.int64)
    mat = rng.integers(0, P, size=(40, 40)).astype(np.int64)
    sing = mat.copy()
    sing[:, -5:] = sing[:, :5]
    ra = rng.integers(-3, 4, size=(60, 420)).astype(np.int64)
    rb = rng.integers(-3, 4, size=(60, 420)).astype(np.int64)
    return [
        ("subgroup_closure S7", lambda: kernels.subgroup_closure_nb(table, gens), lambda: kernels.subgroup_closure_np(table, gens)),
        ("orbit_labels S7", lambda: kernels.orbit_labels_nb(maps), lambda: kernels.orbit_labels_np(maps)),
        ("class_counts S6", lambda: kernels.class_counts_nb(y, cof, len(cls)), lambda: kernels.class_counts_np(y, cof, len(cls))),
        ("charpoly_mod 40x40", lambda: kernels.charpoly_mod_nb(mat, P), lambda: kernels.charpoly_mod_np(mat, P)),
        ("nullspace_mod 40x40", lambda: kernels.nullspace_mod_nb(sing, P), lambda: kernels.nullspace_mod_np(sing, P)),
        ("ring_mul 60 x Z[x]/(x^420-1)", lambda: kernels.ring_mul_nb(ra, rb), lambda: kernels.ring_mul_np(ra, rb)),
    ]


END_TO_END = {
    "table S7": "from bpi.characters import character_table; from bpi.groups import group_from_generators; "
    "from bpi.perm import parse_cycles as p; "
    "character_table(group_from_generators(7, [p('(1 2 3 4 5 6 7)', 7), p('(1 2)', 7)]))",
    "corpus-run <= 48": "from bpi.harness import corpus_run; assert all(r.passed for r in corpus_run(48))",
}


def end_to_end(code, flag):
    env = dict(os.environ, BPI_DISABLE_NUMBA=flag)
    env.pop("BPI_CACHE_DIR", None)
    t0 = time.perf_counter()
    subprocess.run([sys.executable, "-c", code], env=env, check=True)
    return time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--skip-end-to-end", action="store_true")
    args = ap.parse_args()

    print(f"{'case':<32}{'numba':>12}{'numpy':>12}{'speedup':>10}")
    for name, nb, np_ in kernel_cases():
        a, b = best(nb, args.repeat), best(np_, args.repeat)
        print(f"{name:<32}{a * 1e3:>10.3f}ms{b * 1e3:>10.3f}ms{b / a:>9.1f}x")
    if args.skip_end_to_end:
        return
    for name, code in END_TO_END.items():
        a, b = end_to_end(code, "0"), end_to_end(code, "1")
        print(f"{name:<32}{a:>11.2f}s{b:>11.2f}s{b / a:>9.1f}x")


if __name__ == "__main__":
    main()
